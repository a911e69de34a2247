#pragma once

#include <string>
#include <vector>

#include "ccsym/chen.hpp"
#include "ccsym/ratfunc.hpp"
#include "ccsym/report.hpp"
#include "ccsym/symbol.hpp"

namespace ccsym {

/// dz/z iterated r times around |z| = radius against (2 pi i)^r / r!.
CheckReport winding_power_check(int r, double radius, const QuadratureConfig& cfg);

/// Integral of df/f around a circle about center against 2 pi i times the
/// valuation of f there. Throws GeometryError if the circle encloses another
/// zero or pole.
CheckReport residue_winding_check(const RationalFunction& f, const ExactScalar& center, double radius,
                                  const QuadratureConfig& cfg);

/// dz/z o d(1 - a z^n)/(1 - a z^n) around |z| = radius against
/// 2 pi i log(1 - a radius^n). Requires |reduce(a)| radius^n < 1.
CheckReport log_binomial_check(int n, const FloatElement& a, double radius, const QuadratureConfig& cfg);

/// d(1 - a z^j)/(1 - a z^j) o d(1 - b z^k)/(1 - b z^k) around |z| = radius
/// against 0 when jk > 0 and 2 pi i sgn(j) d log(1 - a^{|k|/d} b^{|j|/d})
/// otherwise, d = gcd(j, k).
CheckReport binomial_pair_check(int j, int k, const FloatElement& a, const FloatElement& b, double radius,
                                const QuadratureConfig& cfg);

/// exp of the integral of df/f along the segment from base to the point at
/// distance radius from center towards base, against f(end) / f(base).
CheckReport endpoint_log_check(const RationalFunction& f, const SpherePoint& center, const ExactScalar& base,
                               double radius, const QuadratureConfig& cfg);

/// Loop from base around s used by the local checks: out along a segment,
/// once around s counterclockwise in the local coordinate (clockwise on
/// |x| = 1/radius for s = infinity), and back.
Path local_loop(const SpherePoint& s, Complex base, double radius);

/// A third of the local distance from s to the nearest other support point
/// or to base, measured in 1/x at infinity.
double default_loop_radius(const RationalFunction& f, const RationalFunction& g, const SpherePoint& s,
                           const ExactScalar& base);

/// exp((1/2 pi i) int_loop df/f o dg/g) against the local symbol at s times
/// g(base)^{nu(f)} / f(base)^{nu(g)}. The truncation order of the local
/// expansions grows until the symbol is determined.
CheckReport main_theorem_check(const RationalFunction& f, const RationalFunction& g, const SpherePoint& s,
                               const ExactScalar& base, double radius, const QuadratureConfig& cfg);

/// Exact product of the local symbols over the support. Throws
/// TruncationError when trunc_order is too small.
CheckReport weil_reciprocity_check(const RationalFunction& f, const RationalFunction& g, int trunc_order);

/// One lasso per support point, all based at a common point.
struct LoopSystem {
  std::vector<SpherePoint> points;
  std::vector<Path> loops;
  /// Departure angle of each loop at the base, in [0, 2 pi).
  std::vector<double> angles;
};

/// Lassos from base around every support point, pairwise disjoint away from
/// the base and listed in the order whose product is trivial. Throws
/// GeometryError when no collision-free layout is found.
LoopSystem reciprocity_loops(const std::vector<SpherePoint>& support, const ExactScalar& base);

/// Sum over loops of int df/f o dg/g plus the cross terms
/// sum_{i<j} int_i df/f int_j dg/g, against 0.
CheckReport bilinear_reciprocity_check(const RationalFunction& f, const RationalFunction& g, const ExactScalar& base,
                                       const QuadratureConfig& cfg);

/// Quadratic term of the commutator loop [alpha, beta] against
/// int_alpha w1 int_beta w2 - int_beta w1 int_alpha w2.
CheckReport commutator_quadratic_check(const Path& alpha, const Path& beta, const Form& w1, const Form& w2,
                                       const QuadratureConfig& cfg);

enum class ChenIdentity { shuffle, reversal, composition, homotopy };

/// shuffle and reversal use paths[0]; composition compares paths[0] * paths[1]
/// with its pieces; homotopy compares the word series of paths[0] and paths[1]
/// up to length 2.
CheckReport chen_identity_check(ChenIdentity kind, const Form& w1, const Form& w2, const std::vector<Path>& paths,
                                const QuadratureConfig& cfg);

/// The four identities on fixed inputs with an algebra-valued form.
std::vector<CheckReport> chen_identity_suite(const QuadratureConfig& cfg);

} // namespace ccsym
