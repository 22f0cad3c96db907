#pragma once

#include <sparity/affine_space.hpp>
#include <sparity/baselines.hpp>
#include <sparity/bit_vector.hpp>
#include <sparity/combinatorics.hpp>
#include <sparity/cover_design.hpp>
#include <sparity/errors.hpp>
#include <sparity/mb_to_pac.hpp>
#include <sparity/noisy_reduction.hpp>
#include <sparity/online_learner.hpp>
#include <sparity/oracles.hpp>
#include <sparity/rng.hpp>
