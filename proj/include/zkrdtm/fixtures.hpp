#pragma once

#include "zkrdtm/hyper_poly.hpp"
#include "zkrdtm/series.hpp"

namespace zkrdtm {

enum class TableExample { zk33, zk22 };

struct ExactProblem {
  PDESpec spec;
  InitialCondition<HyperPoly> ic;
};

/// u_t + (u³)_x + 2(u³)_xxx + 2(u³)_yyx = 0, u(x,y,0) = (3/2)λ sinh((x+y)/6).
ExactProblem zk33_problem(const Rational& lambda);

/// u_t + (u²)_x + (1/8)(u²)_xxx + (1/8)(u²)_yyx = 0, u(x,y,0) = −(4/3)λ cosh²(x+y).
ExactProblem zk22_problem(const Rational& lambda);

ExactProblem table_problem(TableExample example, const Rational& lambda);

}  // namespace zkrdtm
