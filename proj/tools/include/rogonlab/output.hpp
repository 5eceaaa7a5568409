#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "rogonlab/rogon.hpp"
#include "rogonlab/solver.hpp"

namespace rogonlab::io {

/// Header shared by every field CSV.
inline constexpr std::string_view kFieldCsvHeader = "S,t,re_sigma,im_sigma,re_psi,im_psi,I_sigma,I_psi";

inline constexpr std::string_view kSeriesCsvHeader =
    "t,N_sigma,N_psi,momentum,hamiltonian,l2_rel_vs_analytic";

/// Shortest decimal text that parses back to exactly `v`.
std::string format_double(double v);

/// Grid rows, t-major then S.
std::string field_csv(const FieldGrid& grid);

/// One row per grid point of a solver state.
std::string state_csv(const SimState& state, const Grid& grid);

/// Writes `contents` byte for byte, creating parent directories.
void write_file(const std::filesystem::path& path, std::string_view contents);

/// Metadata written next to every output. Serialization is key-sorted, so
/// two manifests for the same command differ only in wall_clock_seconds.
class Manifest {
 public:
  Manifest(std::string command, std::vector<std::string> argv);

  nlohmann::json& parameters() { return doc_["parameters"]; }
  void add_output(const std::filesystem::path& path);
  void set_duration(double seconds) { doc_["wall_clock_seconds"] = seconds; }
  void set(const std::string& key, nlohmann::json value) { doc_[key] = std::move(value); }

  const nlohmann::json& json() const { return doc_; }
  void write(const std::filesystem::path& path) const;

 private:
  nlohmann::json doc_;
};

nlohmann::json to_json(const RogonParams& p);

struct SliceSpec {
  std::string csv;  // file name relative to the script
  double t = 0.0;
};

/// Standalone matplotlib script drawing intensity slices with solid, dashed
/// and dash-dotted lines (cycled); optionally also the surface and density
/// plots when `surface_csv` is non-empty.
std::string plot_script(std::string_view title, std::string_view surface_csv,
                        std::span<const SliceSpec> slices);

}  // namespace rogonlab::io
