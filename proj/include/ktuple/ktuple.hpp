#pragma once

#include "checkpoint.hpp"
#include "compensated_sum.hpp"
#include "counter.hpp"
#include "errors.hpp"
#include "hardy_littlewood.hpp"
#include "log_integral.hpp"
#include "parallel.hpp"
#include "pattern.hpp"
#include "pdf.hpp"
#include "rational.hpp"
#include "sieve.hpp"
