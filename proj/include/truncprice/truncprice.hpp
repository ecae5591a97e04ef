#pragma once

#include "truncprice/density.hpp"
#include "truncprice/distribution.hpp"
#include "truncprice/error.hpp"
#include "truncprice/option_engine.hpp"
#include "truncprice/price.hpp"
#include "truncprice/pricing_rules.hpp"
#include "truncprice/quadrature.hpp"
#include "truncprice/stp_lab.hpp"
