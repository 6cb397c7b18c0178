#include "zkrdtm/fixtures.hpp"

namespace zkrdtm {

ExactProblem zk33_problem(const Rational& lambda) {
  const Rational mu(1, 6);
  return {PDESpec::make(Rational(1), Rational(2), Rational(2), 3),
          {HyperPoly::sinh(mu).scaled(Rational(3, 2) * lambda), lambda}};
}

ExactProblem zk22_problem(const Rational& lambda) {
  const Rational mu(1);
  return {PDESpec::make(Rational(1), Rational(1, 8), Rational(1, 8), 2),
          {HyperPoly::monomial(mu, 0, 2, Rational(-4, 3) * lambda), lambda}};
}

ExactProblem table_problem(TableExample example, const Rational& lambda) {
  return example == TableExample::zk33 ? zk33_problem(lambda) : zk22_problem(lambda);
}

}  // namespace zkrdtm
