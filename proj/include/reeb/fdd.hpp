#pragma once

#include <iosfwd>
#include <optional>
#include <set>
#include <vector>

#include "reeb/interleave.hpp"
#include "reeb/paths.hpp"

namespace reeb {

// One linear piece of a PL map between Reeb graphs: the source interval
// [t0, t1] of a source cell maps into a target edge with affine values.
struct CertPiece {
  // source: vertex (t0 == t1 == its value) or edge by endpoint ids
  int src_vertex = -1;
  int src_u = -1, src_w = -1;
  Rat t0, t1;
  // target edge by endpoint ids; img affine over [t0, t1]
  int dst_u = -1, dst_w = -1;
  Rat img0, img1;
  int src_copy = 0, dst_copy = 0;  // parallel-edge disambiguators

  Rat img_at(const Rat& t) const {
    if (t0 == t1) return img0;
    return img0 + (img1 - img0) * (t - t0) / (t1 - t0);
  }
};

struct MapCertificate {
  std::vector<CertPiece> forward;   // R_f -> R_g
  std::vector<CertPiece> backward;  // R_g -> R_f
  std::set<int> boundary_f, boundary_g;  // optional boundary vertex sets
};

// Checks totality, per-cell coverage, continuity at shared endpoints, and
// boundary preservation when boundary sets are declared.
void validate_certificate(const ReebGraph& f, const ReebGraph& g, const MapCertificate& c);

struct DistortionResult {
  Rat lower, upper;  // equal in exact mode (resolution == 0)
};

// Map distortion D(Phi, Psi): sup over supergraph point pairs of
// |d_f(x,x') - d_g(y,y')| / 2. resolution 0 = exact branch-and-bound over
// the PL structure; resolution > 0 = sampling with Lipschitz slack.
DistortionResult evaluate_distortion(const ReebGraph& f, const ReebGraph& g,
                                     const MapCertificate& c, const Rat& resolution);

// (||f - g.Phi||_inf, ||f.Psi - g||_inf), exact at piece breakpoints.
std::pair<Rat, Rat> evaluate_supnorms(const ReebGraph& f, const ReebGraph& g,
                                      const MapCertificate& c);

Rat fdd_upper(const ReebGraph& f, const ReebGraph& g, const MapCertificate& c,
              const Rat& resolution);

struct FddBounds {
  Bracket bracket;
  Bracket interleaving;  // the d_I bracket used
};

FddBounds fdd_bounds(const ReebGraph& a, const ReebGraph& b,
                     const std::vector<MapCertificate>& certs, const Rat& resolution,
                     const Rat& tol, SearchBudget& budget);

MapCertificate parse_cert(std::istream& in);
MapCertificate parse_cert_file(const std::string& path);
void serialize_cert(const MapCertificate& c, std::ostream& out);

// identity certificate for isomorphic graphs (via a witness map)
MapCertificate identity_certificate(const ReebGraph& f, const ReebGraph& g);

}  // namespace reeb
