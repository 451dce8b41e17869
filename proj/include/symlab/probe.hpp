#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "symlab/experiment.hpp"

namespace symlab {

struct ProbeEntry {
  std::string body;
  int offset = 0;
  double steiner_distance = 0.0;    // d_H(S_{k,n} A, r(A) D) / r(A)
  double minkowski_distance = 0.0;  // d_H(B_{k,n} A, L(A) D) / L(A)
  bool steiner_rounds = false;
  bool minkowski_rounds = false;
  bool anomaly = false;
  std::string note;
};

/// Runs both operators on every tail of `seq` named by `offsets`. A body
/// "rounds" when its final relative Hausdorff distance to the limit ball
/// is at most tol. Disagreement where the failing side is above 2 tol is
/// flagged as an anomaly.
struct ProbeReport {
  double tol = 0.0;
  std::vector<ProbeEntry> entries;
  bool any_anomaly() const;
};

struct NamedBody {
  std::string name;
  Body body;
};

ProbeReport equivalence_probe(const std::vector<Direction>& seq, const std::vector<NamedBody>& bodies,
                              const std::vector<int>& offsets, double tol, const SymmetrizeOptions& sym = {},
                              std::uint64_t seed = 0);

/// {"dim", "source", "n_steps", "bodies": [spec...], "offsets": [...], "tol"}
ProbeReport probe_from_config(const nlohmann::json& j);
nlohmann::json probe_to_json(const ProbeReport& r);

}  // namespace symlab
