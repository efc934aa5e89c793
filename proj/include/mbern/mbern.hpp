#pragma once

#include "mbern/bounds.hpp"
#include "mbern/frechet.hpp"
#include "mbern/lp.hpp"
#include "mbern/matrix.hpp"
#include "mbern/rational.hpp"
#include "mbern/ray_cone.hpp"
#include "mbern/sampler.hpp"
#include "mbern/solvers.hpp"
#include "mbern/support.hpp"
