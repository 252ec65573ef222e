#pragma once

#include "microde/benchmarks.hpp"
#include "microde/core.hpp"
#include "microde/engine.hpp"
#include "microde/errors.hpp"
#include "microde/experiment.hpp"
#include "microde/operators.hpp"
#include "microde/opposition.hpp"
#include "microde/rng.hpp"
#include "microde/stats.hpp"
#include "microde/strategy.hpp"
