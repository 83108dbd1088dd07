#pragma once

#include "mcf/rational.hpp"
#include "mcf/base.hpp"
#include "mcf/interval.hpp"
#include "mcf/fibonacci.hpp"
#include "mcf/expansion.hpp"
#include "mcf/convergents.hpp"
#include "mcf/analysis.hpp"
#include "mcf/random.hpp"
#include "mcf/audit.hpp"
#include "mcf/baseline_stats.hpp"
