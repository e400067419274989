#pragma once

#include <bbstep/bench.hpp>
#include <bbstep/descent.hpp>
#include <bbstep/errors.hpp>
#include <bbstep/oracles.hpp>
#include <bbstep/problems.hpp>
#include <bbstep/steplength.hpp>
#include <bbstep/vector_ops.hpp>
