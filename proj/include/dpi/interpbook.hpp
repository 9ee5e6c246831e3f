#pragma once

// Interpolation bookkeeping: (q, r) profiles of a Hilbert-scheme component,
// admissible sequences, the del Pezzo table and complete-intersection checks.

#include <optional>
#include <string>
#include <vector>

#include "dpi/pipelines.hpp"

namespace dpi {

class BadDimensions : public Error {
 public:
  using Error::Error;
};

/// dim_u = q (n - k) + r with 0 <= r < n - k. A component with this profile
/// interpolates if it meets q general points and a general plane of dimension
/// n - k - r; there is no plane condition when r = 0.
struct InterpolationProfile {
  int dim_u = 0, n = 0, k = 0;
  int q = 0, r = 0;
  std::optional<int> plane_dim;

  nlohmann::json to_json() const;
};

/// Throws BadDimensions unless n > k >= 0 and dim_u >= 0.
InterpolationProfile profile(int dim_u, int n, int k);

struct Table1Row {
  std::string label;  // "3" ... "9", or "8, type 0" / "8, type 1"
  int degree = 0;
  int blown_up = 0;   // points blown up in the plane model; 0 for P^1 x P^1
  int automorphisms = 0;
  InterpolationProfile profile;
};

/// Dimension of the component of del Pezzo surfaces of degree d in P^d:
/// (d+1)^2 - 1 for PGL_{d+1}, plus 2 per blown-up point, minus the
/// automorphisms of the model (8 for PGL_3 acting on the plane, 6 for
/// PGL_2 x PGL_2 acting on P^1 x P^1).
std::vector<Table1Row> table1();
/// Aligned text, one line per row plus a header; ends with a newline.
std::string table1_text(const std::vector<Table1Row>& rows);
nlohmann::json table1_json(const std::vector<Table1Row>& rows);

/// Weakly decreasing, entries in [0, n - k], sum at most dim_u.
using AdmissibleSeq = std::vector<int>;
bool is_admissible(const AdmissibleSeq& lambda, int n, int k, int dim_u);
/// (n - k)^q followed by r when r > 0.
AdmissibleSeq interpolation_sequence(const InterpolationProfile& p);

/// Degree-d forms on P^n through C(d+n, n) - k random points: the system
/// must have dimension exactly k, every basis form must vanish on every
/// point, and the component of complete intersections has dimension
/// k (C(d+n, n) - k). Throws std::invalid_argument outside
/// 1 <= k < C(d+n, n).
PipelineReport ci_interpolation(int k, int d, int n, uint64_t seed, const Field& f = Field::prime(65537));

/// Dimension of the space of (triad, pencil) data: 6 for three points of P^2
/// plus 2 * 10 for the ten base points fixing a pencil of quintics singular
/// at them. Checked against dim Hilb_13 P^2 = 2 * 13.
int phi_dimension_audit();

}  // namespace dpi
