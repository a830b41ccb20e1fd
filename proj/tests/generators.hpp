#pragma once

// Seeded random generators for property tests.

#include <random>

#include "thetaform/sampling.hpp"

namespace thetaform::testing {

using thetaform::random_coeff;
using thetaform::random_monomial;
using thetaform::random_poly;
using thetaform::random_rational;

} // namespace thetaform::testing

#ifdef DOCTEST_LIBRARY_INCLUDED
namespace doctest {
template <> struct StringMaker<thetaform::ThetaPoly> {
    static String convert(const thetaform::ThetaPoly& p) { return p.render().c_str(); }
};
template <> struct StringMaker<thetaform::CoeffExpr> {
    static String convert(const thetaform::CoeffExpr& c) { return c.render().c_str(); }
};
} // namespace doctest
#endif
