#pragma once

#include "cayley.hpp"
#include "checked.hpp"
#include "huthnance.hpp"
#include "identity.hpp"
#include "loop_table.hpp"
#include "poly.hpp"
#include "search.hpp"
