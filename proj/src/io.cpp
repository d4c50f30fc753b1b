#include "squeeze/io.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "squeeze/errors.hpp"

namespace squeeze::io {

namespace {

void put(std::ostream& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out << buf;
}

}  // namespace

void write_state(std::ostream& out, const DickeState& state) {
  const auto j = state.spin();
  out << "{\"N\": " << j.particles() << ", \"j\": ";
  put(out, j.value());
  out << ", \"basis\": \"Jz-descending\", \"amplitudes\": [";
  for (std::size_t k = 0; k < state.dim(); ++k) {
    out << (k ? ", [" : "[");
    put(out, state[k].real());
    out << ", ";
    put(out, state[k].imag());
    out << "]";
  }
  out << "]}\n";
}

DickeState read_state(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("state snapshot is not valid JSON: ") + e.what());
  }
  try {
    if (!doc.is_object()) throw IoError("state snapshot must be a JSON object");
    if (doc.at("basis").get<std::string>() != "Jz-descending") throw IoError("unsupported basis in state snapshot");
    const auto n = doc.at("N").get<int>();
    if (n < 1) throw IoError("state snapshot N must be positive");
    const auto j = SpinLength::from_particles(n);
    if (doc.contains("j") && std::abs(doc.at("j").get<double>() - j.value()) > 0.0)
      throw IoError("state snapshot j does not match N");
    const auto& a = doc.at("amplitudes");
    if (!a.is_array() || a.size() != j.dim()) throw IoError("state snapshot has the wrong number of amplitudes");
    std::vector<Complex> amps;
    amps.reserve(a.size());
    for (const auto& c : a) {
      if (!c.is_array() || c.size() != 2) throw IoError("amplitude entries must be [re, im] pairs");
      amps.emplace_back(c[0].get<double>(), c[1].get<double>());
    }
    return DickeState(j, std::move(amps));
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("malformed state snapshot: ") + e.what());
  } catch (const DomainError& e) {
    throw IoError(std::string("invalid state snapshot: ") + e.what());
  }
}

void save_state(const std::filesystem::path& path, const DickeState& state) {
  std::ostringstream s;
  write_state(s, state);
  write_file(path, s.str());
}

DickeState load_state(const std::filesystem::path& path) {
  std::istringstream s(read_file(path));
  return read_state(s);
}

void write_run_csv(std::ostream& out, const RunRecord& record, std::optional<double> chi_rad_per_s) {
  out << kRunCsvHeader << (chi_rad_per_s ? ",t_seconds\n" : "\n");
  for (const auto& s : record.samples) {
    const auto& r = s.report;
    for (double v : {s.chi_t, r.xi2, 10.0 * std::log10(r.xi2), r.mean_spin[0], r.mean_spin[1], r.mean_spin[2]}) {
      put(out, v);
      out << ',';
    }
    put(out, r.theta_min);
    if (chi_rad_per_s) {
      out << ',';
      put(out, s.chi_t / *chi_rad_per_s);
    }
    out << '\n';
  }
}

void write_husimi_csv(std::ostream& out, const HusimiGrid& grid) {
  out << "theta,phi,q\n";
  for (std::size_t i = 0; i < grid.theta_count; ++i)
    for (std::size_t k = 0; k < grid.phi_count; ++k) {
      put(out, grid.thetas[i]);
      out << ',';
      put(out, grid.phis[k]);
      out << ',';
      put(out, grid.at(i, k));
      out << '\n';
    }
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  f.close();
  if (!f) throw IoError("failed writing " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string());
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

std::string git_blob_digest(std::string_view content) {
  std::string blob = "blob " + std::to_string(content.size()) + '\0';
  blob.append(content);
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(blob.data(), blob.size(), md, &len, EVP_sha1(), nullptr) != 1) throw IoError("SHA-1 digest failed");
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    const unsigned char b = md[i];
    out += hex[b >> 4];
    out += hex[b & 15];
  }
  return out;
}

}  // namespace squeeze::io
