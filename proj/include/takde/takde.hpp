#pragma once

// Streaming univariate density estimation: temporal-adaptive windowing,
// AMISE-optimal bandwidth and weight sequences, baseline estimators, a
// dynamic synthetic benchmark, and numerical validation tools.

#include "takde/batch.hpp"
#include "takde/bench.hpp"
#include "takde/bandwidth.hpp"
#include "takde/errors.hpp"
#include "takde/estimator.hpp"
#include "takde/histogram.hpp"
#include "takde/kernel.hpp"
#include "takde/oracle.hpp"
#include "takde/quadrature.hpp"
#include "takde/rng.hpp"
#include "takde/stream_io.hpp"
#include "takde/synthetic.hpp"
#include "takde/weights.hpp"
#include "takde/window.hpp"
