#pragma once

// Umbrella header: the whole pipeline from source text to reports.

#include "vbec/diagnostics.hpp"
#include "vbec/formatter.hpp"
#include "vbec/lexer.hpp"
#include "vbec/lifecycle.hpp"
#include "vbec/metrics.hpp"
#include "vbec/model.hpp"
#include "vbec/parser.hpp"
#include "vbec/report.hpp"
#include "vbec/riskengine.hpp"
#include "vbec/syntax.hpp"
#include "vbec/tracegraph.hpp"
#include "vbec/validator.hpp"
