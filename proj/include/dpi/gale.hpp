#pragma once

// Association (Gale transform) of point configurations.

#include <optional>

#include "dpi/projgeom.hpp"

namespace dpi {

class BadLength : public Error {
 public:
  using Error::Error;
};

/// For gamma points in P^r with gamma = r + s + 2 (s >= 1), the gamma points
/// of P^s given by the columns of the rref kernel basis of the transposed
/// coordinate matrix. Throws BadLength if gamma < r + 3 and
/// DegenerateConfiguration if the coordinate matrix is rank deficient or an
/// output column vanishes.
PointConfig associate(const PointConfig& cfg);

/// Diagonal witness d with sum_i d_i a_i b_i^T = 0 and every d_i nonzero,
/// for the canonical representatives a_i, b_i; nullopt if none exists.
/// Throws BadLength unless a.size() == r + s + 2.
std::optional<Vec> verify_association(const PointConfig& a, const PointConfig& b);

}  // namespace dpi
