#pragma once

#include "cat0/certify.hpp"
#include "cat0/convex.hpp"
#include "cat0/point.hpp"
#include "cat0/projection.hpp"
#include "cat0/quasilin.hpp"
#include "cat0/rng.hpp"
#include "cat0/sampling.hpp"
#include "cat0/scene.hpp"
#include "cat0/space.hpp"
