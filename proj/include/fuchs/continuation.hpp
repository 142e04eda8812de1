#pragma once

// Numeric analytic continuation: transport of solution frames along
// polygonal paths by truncated Taylor steps, connection of a local solution
// onto a local basis at another singular point, and monodromy matrices.
//
// Frame convention: a solution y is carried as its Taylor coordinate vector
// (y, y', y''/2!, ..., y^(n-1)/(n-1)!) at the current point.  Transition
// matrices act on these vectors, frame(end) = M * frame(start).

#include <string>
#include <vector>

#include "fuchs/bigcomplex.hpp"
#include "fuchs/diffop.hpp"
#include "fuchs/frobenius.hpp"
#include "fuchs/linalg.hpp"

namespace fuchs {

// polygonal path; straight segments between consecutive waypoints
struct Path {
  std::vector<BigComplex> points;

  Path() = default;
  explicit Path(std::vector<BigComplex> pts) : points(std::move(pts)) {}

  const BigComplex& start() const { return points.front(); }
  const BigComplex& end() const { return points.back(); }
  Path reversed() const;
  Path conjugated() const;
  // concatenation; next must start where this ends
  Path then(const Path& next) const;
  bool is_closed() const;
  std::string to_string() const;
};

// counterclockwise regular polygon around center through
// center + radius * e^(2*pi*i*k/segments), entered and left at k = 0; the
// start vertex can be rotated by quarter turns
Path circle_loop(const BigComplex& center, const BigFloat& radius,
                 int segments = 8, int start_quarter = 0);

// straight segment from a to b; when it passes a singular point of L at
// less than 1/100 of that point's scale, a detour waypoint displaced by
// +2i * clearance is inserted at the closest approach
Path auto_path(const DiffOp& L, const BigComplex& a, const BigComplex& b,
               mpfr_prec_t prec = 192);

struct TransitionMatrix {
  int order = 0;
  mpfr_prec_t prec = 64;   // requested bits
  CMat m;                  // Taylor-frame map
  BigFloat err;            // empirical estimate, max entrywise deviation
  long steps = 0;
  std::string to_string() const;
};

// frame transport along the path; endpoints and interior must be ordinary.
// The error estimate compares against a recomputation with doubled
// truncation order and 32 extra bits; it escalates at most three times
// before giving up.
TransitionMatrix transition(const DiffOp& L, const Path& path,
                            mpfr_prec_t prec = 192);

// Taylor coordinates of a local Frobenius solution at x1, on the branch
// selected by winding; x1 must be ordinary and inside the trust radius
std::vector<BigComplex> seed_from_local(const DiffOp& L,
                                        const LocalSolution& s,
                                        const BigComplex& x1,
                                        mpfr_prec_t prec = 192,
                                        long winding = 0);

struct ConnectionCoefficients {
  std::vector<BigComplex> c;
  BigFloat err;            // propagated transport estimate
  std::string to_string() const;
};

// express the continuation of s along the path in the target local basis;
// the path runs from a point inside s's trust radius to a point inside the
// target's trust radius
ConnectionCoefficients connect_to_local(const DiffOp& L,
                                        const LocalSolution& s,
                                        const Path& path,
                                        const LocalBasis& target,
                                        mpfr_prec_t prec = 192);

// deck transformation of the closed loop in the Taylor frame at its base
TransitionMatrix monodromy(const DiffOp& L, const Path& loop,
                           mpfr_prec_t prec = 192);

// the same matrix rewritten in the coordinates of a local basis: columns
// and rows refer to basis.solutions, base must lie in the basis trust disc
TransitionMatrix monodromy_in_basis(const DiffOp& L, const Path& loop,
                                    const LocalBasis& basis,
                                    mpfr_prec_t prec = 192);

}  // namespace fuchs
