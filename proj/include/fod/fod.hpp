#pragma once

// Umbrella header.

#include "fod/classical.hpp"
#include "fod/csv.hpp"
#include "fod/errors.hpp"
#include "fod/expr.hpp"
#include "fod/figures.hpp"
#include "fod/fractional_order.hpp"
#include "fod/gamma.hpp"
#include "fod/karci.hpp"
#include "fod/properties.hpp"
