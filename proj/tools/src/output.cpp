#include "rogonlab/output.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "rogonlab/version.hpp"

namespace rogonlab::io {

std::string format_double(double v) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw std::runtime_error("failed to format floating-point value");
  return std::string(buf.data(), ptr);
}

namespace {

void append_row(std::string& out, double S, double t, const FieldPair& f) {
  const double values[] = {S,
                           t,
                           f.sigma.real(),
                           f.sigma.imag(),
                           f.psi.real(),
                           f.psi.imag(),
                           std::norm(f.sigma),
                           std::norm(f.psi)};
  bool first = true;
  for (double v : values) {
    if (!first) out += ',';
    out += format_double(v);
    first = false;
  }
  out += '\n';
}

}  // namespace

std::string field_csv(const FieldGrid& grid) {
  std::string out;
  out.reserve(grid.fields.size() * 160 + 64);
  out += kFieldCsvHeader;
  out += '\n';
  for (std::size_t it = 0; it < grid.nt(); ++it) {
    for (std::size_t is = 0; is < grid.ns(); ++is) {
      append_row(out, grid.S[is], grid.t[it], grid.fields[grid.index(it, is)]);
    }
  }
  return out;
}

std::string state_csv(const SimState& state, const Grid& grid) {
  std::string out;
  out += kFieldCsvHeader;
  out += '\n';
  for (std::size_t j = 0; j < grid.N; ++j) {
    append_row(out, grid.S[j], state.t, {state.sigma[j], state.psi[j]});
  }
  return out;
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  os.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!os) throw std::runtime_error("failed writing " + path.string());
}

Manifest::Manifest(std::string command, std::vector<std::string> argv) {
  doc_["command"] = std::move(command);
  doc_["argv"] = std::move(argv);
  doc_["tool"] = "rogonlab";
  doc_["version"] = kVersion;
  doc_["parameters"] = nlohmann::json::object();
  doc_["outputs"] = nlohmann::json::array();
  doc_["wall_clock_seconds"] = 0.0;
}

void Manifest::add_output(const std::filesystem::path& path) {
  doc_["outputs"].push_back(path.generic_string());
}

void Manifest::write(const std::filesystem::path& path) const {
  write_file(path, doc_.dump(2) + "\n");
}

nlohmann::json to_json(const RogonParams& p) {
  return {{"alpha", p.alpha}, {"beta", p.beta}, {"a", p.a}, {"b", p.b}, {"k", p.k}};
}

std::string plot_script(std::string_view title, std::string_view surface_csv,
                        std::span<const SliceSpec> slices) {
  std::ostringstream py;
  py << "#!/usr/bin/env python3\n"
     << "# Generated by rogonlab. Run from this directory: python3 <script>\n"
     << "import os\n"
     << "import numpy as np\n"
     << "import matplotlib\n"
     << "matplotlib.use('Agg')\n"
     << "import matplotlib.pyplot as plt\n\n"
     << "HERE = os.path.dirname(os.path.abspath(__file__))\n"
     << "TITLE = '" << title << "'\n"
     << "SURFACE = " << (surface_csv.empty() ? "None" : "'" + std::string(surface_csv) + "'")
     << "\n"
     << "SLICES = [\n";
  for (const SliceSpec& s : slices) {
    py << "    ('" << s.csv << "', " << format_double(s.t) << "),\n";
  }
  py << "]\n"
     << "STYLES = ['-', '--', '-.']\n\n"
     << "def load(name):\n"
     << "    return np.loadtxt(os.path.join(HERE, name), delimiter=',', skiprows=1, ndmin=2)\n\n"
     << "def surface(component, col):\n"
     << "    d = load(SURFACE)\n"
     << "    S = np.unique(d[:, 0])\n"
     << "    t = np.unique(d[:, 1])\n"
     << "    I = d[:, col].reshape(len(t), len(S))\n"
     << "    SS, TT = np.meshgrid(S, t)\n"
     << "    fig = plt.figure(figsize=(11, 4.5))\n"
     << "    ax = fig.add_subplot(1, 2, 1, projection='3d')\n"
     << "    ax.plot_surface(SS, TT, I, cmap='viridis', linewidth=0)\n"
     << "    ax.set_xlabel('S'); ax.set_ylabel('t'); ax.set_zlabel('|' + component + '|^2')\n"
     << "    ax2 = fig.add_subplot(1, 2, 2)\n"
     << "    im = ax2.pcolormesh(SS, TT, I, shading='auto', cmap='viridis')\n"
     << "    fig.colorbar(im, ax=ax2)\n"
     << "    ax2.set_xlabel('S'); ax2.set_ylabel('t')\n"
     << "    fig.suptitle(TITLE + ': |' + component + '|^2')\n"
     << "    fig.savefig(os.path.join(HERE, 'surface_' + component + '.png'), dpi=150)\n\n"
     << "def slices(component, col):\n"
     << "    fig, ax = plt.subplots(figsize=(6, 4))\n"
     << "    for i, (name, t) in enumerate(SLICES):\n"
     << "        d = load(name)\n"
     << "        ax.plot(d[:, 0], d[:, col], STYLES[i % len(STYLES)], label='t=%g' % t)\n"
     << "    ax.set_xlabel('S'); ax.set_ylabel('|' + component + '|^2'); ax.legend()\n"
     << "    ax.set_title(TITLE)\n"
     << "    fig.savefig(os.path.join(HERE, 'slices_' + component + '.png'), dpi=150)\n\n"
     << "if __name__ == '__main__':\n"
     << "    for component, col in (('sigma', 6), ('psi', 7)):\n"
     << "        if SURFACE:\n"
     << "            surface(component, col)\n"
     << "        if SLICES:\n"
     << "            slices(component, col)\n";
  return py.str();
}

}  // namespace rogonlab::io
