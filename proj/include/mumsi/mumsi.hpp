// mumsi.hpp
// Umbrella header: mutually unbiased measurements, generalized skew
// information, and the multipartite entanglement criteria built on them.

#pragma once

#include "collective.hpp"
#include "criteria.hpp"
#include "linalg.hpp"
#include "mum.hpp"
#include "serialize.hpp"
#include "skew.hpp"
#include "states.hpp"
#include "thresholds.hpp"
