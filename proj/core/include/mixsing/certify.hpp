#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mixsing/polynomial.hpp"

namespace mixsing {

enum class NondegMode { plain, strong, partial };
const char* to_string(NondegMode m);
NondegMode mode_from_string(const std::string& s);

struct CertificateStep {
  std::string rule;  // hamm_minors | siegel_strongly_admissible | pullback | assumed_holomorphic_partial
  nlohmann::json detail;
};

struct StructuralCertificate {
  std::vector<CertificateStep> chain;
  std::set<NondegMode> modes;  // which notions the chain establishes
  bool covers(NondegMode m) const { return modes.count(m) > 0; }
};

// Recognizes Hamm / mixed Hamm maps with nonzero maximal minors, Siegel maps with strongly admissible
// frames, and pullbacks of either by mixed coverings. With `assume_holomorphic_partial`, a holomorphic
// map is accepted as partially non-degenerate at the end of a pullback chain.
std::optional<StructuralCertificate> certify_structured(const MixedMap& F, bool assume_holomorphic_partial = false);

}  // namespace mixsing
