#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "denjoy/density.hpp"
#include "denjoy/domain.hpp"
#include "denjoy/hyperbolicity.hpp"
#include "denjoy/solver.hpp"

namespace denjoy {

/// Identity of a CLI run. Every output file carries manifest_id(), the
/// hash of the manifest text, so outputs can be matched to their run.
struct RunManifest {
  std::string command;
  std::string spec_path;
  std::string metric;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  nlohmann::ordered_json options = nlohmann::ordered_json::object();
  std::string out_dir;
  std::string tool_version;
  std::string input_hash;

  nlohmann::ordered_json to_json() const;
  std::string id() const;
};

inline constexpr const char* kToolVersion = "0.1.0";

nlohmann::ordered_json geodesic_to_json(const GeodesicResult& r, const std::string& path_file);

/// index,re,im rows after a "# manifest <id>" line.
std::string path_csv(const PolylinePath& path, const std::string& manifest_id);

/// re,im,delta,beta,qh_density,bp_lower_density,upper_density rows.
std::string density_csv(const std::vector<DensitySample>& samples, const std::string& manifest_id);

/// n,length,m_n,status rows; failed rows have NaN values and the error name.
std::string scan_csv(const ScanReport& report, const std::string& manifest_id);

/// Domain slice around the path (boundary in red, gaps in grey) with the
/// path drawn on top.
std::string path_svg(const GapDomain& domain, const PolylinePath& path, const std::string& manifest_id);

/// m_n against log2 n.
std::string scan_svg(const ScanReport& report, const std::string& manifest_id);

}  // namespace denjoy
