#pragma once

#include "repelgm/error.hpp"
#include "repelgm/logspace.hpp"
#include "repelgm/graph.hpp"
#include "repelgm/model.hpp"
#include "repelgm/rng.hpp"
#include "repelgm/samples.hpp"
#include "repelgm/exact.hpp"
#include "repelgm/sampler.hpp"
#include "repelgm/learner.hpp"
#include "repelgm/statdim.hpp"
#include "repelgm/generators.hpp"
#include "repelgm/io.hpp"
#include "repelgm/experiment.hpp"
