#pragma once

#include "adq/analysis.hpp"
#include "adq/bench.hpp"
#include "adq/errors.hpp"
#include "adq/formats.hpp"
#include "adq/generate.hpp"
#include "adq/met.hpp"
#include "adq/session.hpp"
#include "adq/strategies.hpp"
#include "adq/tolerance.hpp"
