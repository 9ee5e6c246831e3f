#pragma once

// End-to-end constructions with staged certificates. Every pipeline is
// deterministic given (seed, field): attempt i draws from sub_seed(seed, i),
// and genericity failures move on to the next attempt, at most 32 of them.

#include <string>
#include <vector>

#include "dpi/cubic.hpp"
#include "dpi/gale.hpp"
#include "dpi/linsys.hpp"
#include "dpi/maps.hpp"

namespace dpi {

inline constexpr int kResampleCap = 32;

struct FieldSpec {
  uint64_t characteristic = 65537;
  int ext_degree = 1;

  /// F_p, or standard_extension(p, ext_degree).
  Field field() const;
};

struct Stage {
  std::string name;
  bool pass = false;
  nlohmann::json detail;
};

class PipelineReport {
 public:
  PipelineReport(std::string construction, uint64_t seed, const Field& field, std::string mode = "direct");

  const std::string& construction() const { return construction_; }
  const std::vector<Stage>& stages() const { return stages_; }
  /// Conjunction of the stage flags; false when there are no stages.
  bool pass() const;
  /// The stage with this name, or nullptr.
  const Stage* find(const std::string& name) const;

  Stage& stage(const std::string& name, bool pass, nlohmann::json detail = nlohmann::json::object());
  void note(const std::string& key, nlohmann::json value) { notes_[key] = std::move(value); }
  const nlohmann::json& notes() const { return notes_; }
  void set_attempts(int a) { attempts_ = a; }
  int attempts() const { return attempts_; }
  /// Appends another report's stages, prefixing their names.
  void absorb(const PipelineReport& other, const std::string& prefix);

  nlohmann::json to_json() const;

 private:
  std::string construction_;
  uint64_t seed_;
  nlohmann::json field_;
  std::string mode_;
  int attempts_ = 1;
  std::vector<Stage> stages_;
  nlohmann::json notes_ = nlohmann::json::object();
};

// ---------------------------------------------------------------------------
// Rational normal curves

struct RncResult {
  RationalMap map;                 // P^1 -> P^r, coordinates (t : s)
  std::vector<ProjPoint> params;   // preimage of each input point
  PipelineReport report;
};

/// The rational normal curve through r + 3 points of P^r in general position.
/// After moving the first r + 2 points to the standard frame, the last point c
/// sits at parameter 0 and the curve is x_i = prod_{j != i} (t - t_j s) with
/// t_i = -1/c_i. Throws DegenerateConfiguration if some c_i vanishes or two
/// agree (in particular when c is the unit point).
RncResult rnc_through(const PointConfig& cfg);

// ---------------------------------------------------------------------------
// Forward constructions on known surfaces

/// Quadrics on the Segre P^1 x P^2 in P^5 through a ruling plane and 11
/// points of the threefold.
PipelineReport quintic_dp_forward(uint64_t seed, const Field& f);

/// Cubics through three points of a smooth plane quartic, mapping it to a
/// degree-9 curve in P^6.
PipelineReport sextic_dp_forward(uint64_t seed, const Field& f);
/// The same certificates for a given quartic and three of its points. Throws
/// GeneralityFailure if the points are collinear or the quartic is singular.
PipelineReport sextic_dp_from(const HomForm& quartic, const std::array<ProjPoint, 3>& pts, Rng& rng);

/// A smooth (2,3) curve on P^1 x P^1 under the (2,2) embedding into P^8.
PipelineReport p1p1_dp_forward(uint64_t seed, const Field& f);
/// Exact smoothness test for a curve on P^1 x P^1.
bool is_smooth_p1p1(const BiForm& f);

// ---------------------------------------------------------------------------
// 2-Veronese surfaces through 9 points of P^5

struct Veronese9Result {
  int count = 0;
  int two_torsion = 0;
  PipelineReport report;
};

/// Takes the cubic E through 9 random points of P^2 and the class
/// L = 2 (q1 + q2 + q3); embeds E in P^5 by |L| and builds one Veronese
/// surface for each square root M of L, fitted so that it contains the
/// image of E. The count is that of the 2-torsion: 4 in odd characteristic,
/// 2 for an ordinary and 1 for a supersingular curve in characteristic 2.
/// Throws std::invalid_argument in characteristic 3.
Veronese9Result veronese9_count(uint64_t seed, const Field& f);

// ---------------------------------------------------------------------------
// Singular triads and the association pipelines

struct SingularTriad {
  LinearSystem pencil;
  Triad residual;           // the three further base points of the pencil
  RationalMap alpha;        // Cremona transformation centred at `residual`
  Triad triad;              // exceptional triad of alpha
  PointConfig transported;  // alpha(cfg)
  LinearSystem quintics;    // quintics double at triad, through transported
};

/// Quartic pencil through 13 points, its residual triad, the Cremona
/// transformation there and the singular-triad certificate for the image
/// configuration. Records stages in `report`; throws GeneralityFailure when
/// a genericity assumption fails.
SingularTriad singular_triad_for(const PointConfig& cfg, Rng& rng, PipelineReport& report);

struct AssociationResult {
  PointConfig input;
  std::optional<RationalMap> surface;         // P^2 -> P^(9-aux), moved onto input
  std::optional<Projectivity> fit;
  PipelineReport report;
};

/// Forward mode for 13 - aux points in P^(9 - aux), aux in {0, 1, 2}: the
/// input is g(phi(G)) for 13 random points G of P^2, with phi the cubics
/// through the last aux of them. The triad is found from G by the quartic
/// pencil recipe and carried to the associated configuration of the input,
/// where the sextics triple at it (through the transported auxiliary points)
/// give a surface through every input point.
AssociationResult association_forward(uint64_t seed, const Field& f, int aux);

/// The route that applies the pencil recipe to the associated configuration
/// of `cfg` itself (with aux random extra points). Its final fit generally
/// fails: the recipe yields a triad for alpha(B), not for B.
AssociationResult association_literal(const PointConfig& cfg, uint64_t seed, int aux);

inline AssociationResult veronese13(uint64_t seed, const Field& f) { return association_forward(seed, f, 0); }
inline AssociationResult delpezzo8(uint64_t seed, const Field& f) { return association_forward(seed, f, 1); }
inline AssociationResult delpezzo7(uint64_t seed, const Field& f) { return association_forward(seed, f, 2); }

struct DegenerateTriadResult {
  PointConfig cfg;
  Triad triad;
  LinearSystem quintics;
  PipelineReport report;
};

/// The coordinate triangle, two points on each side, one general point and
/// six points on a general line M. The quintics double at the vertices and
/// through the 13 points are M times the triangle times the lines through
/// the general point.
DegenerateTriadResult degenerate_triad_config(uint64_t seed, const Field& f);

/// 7 * 6! / (2! 2! 2!).
int triad_count_lower_bound();
PipelineReport triad_count_report();

/// Over F_101: a seeded 13-point quartic pencil whose residual triad is
/// rational; the resultant route must agree with the exhaustive scan.
/// Resamples up to 400 times, since only about one pencil in six splits.
PipelineReport oracle_pencil_trial(uint64_t seed);

}  // namespace dpi
