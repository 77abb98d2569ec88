#include "pptes/statefile.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace pptes {

using nlohmann::json;

int StateFile::qubit_count() const {
  int n = 0;
  for (int d : dims) {
    if (d != 2) throw std::invalid_argument("only qubit parties supported");
    ++n;
  }
  return n;
}

MultiQubitState StateFile::to_state() const {
  const int n = qubit_count();
  return MultiQubitState(n, matrix, std::max(tolerance, 1e-12));
}

StateFile StateFile::from_state(const MultiQubitState& state,
                                std::map<std::string, std::string> meta) {
  StateFile sf;
  sf.dims.assign(state.qubits(), 2);
  sf.matrix = state.matrix();
  sf.tolerance = state.tol();
  sf.meta = std::move(meta);
  return sf;
}

std::string to_json(const StateFile& sf) {
  json j;
  j["dims"] = sf.dims;
  json rows = json::array();
  for (Eigen::Index i = 0; i < sf.matrix.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < sf.matrix.cols(); ++k)
      row.push_back({sf.matrix(i, k).real(), sf.matrix(i, k).imag()});
    rows.push_back(row);
  }
  j["matrix"] = rows;
  j["tolerance"] = sf.tolerance;
  j["meta"] = sf.meta;
  return j.dump(2);
}

StateFile statefile_from_json(const std::string& text) {
  const json j = json::parse(text);
  StateFile sf;
  sf.dims = j.at("dims").get<std::vector<int>>();
  Eigen::Index dim = 1;
  for (int d : sf.dims) dim *= d;
  const json& rows = j.at("matrix");
  if (static_cast<Eigen::Index>(rows.size()) != dim)
    throw std::invalid_argument("matrix size does not match dims");
  sf.matrix.resize(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const json& row = rows.at(i);
    if (static_cast<Eigen::Index>(row.size()) != dim)
      throw std::invalid_argument("matrix is not square");
    for (Eigen::Index k = 0; k < dim; ++k) {
      const json& cell = row.at(k);
      sf.matrix(i, k) = Complex(cell.at(0).get<double>(),
                                cell.at(1).get<double>());
    }
  }
  sf.tolerance = j.value("tolerance", 1e-10);
  if (j.contains("meta"))
    sf.meta = j.at("meta").get<std::map<std::string, std::string>>();
  return sf;
}

void save_statefile(const StateFile& sf, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << to_json(sf) << "\n";
}

StateFile load_statefile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return statefile_from_json(ss.str());
}

Complex parse_complex(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw std::invalid_argument("empty complex literal");
  // Split off an imaginary tail ending in j or i, if present.
  const char last = s.back();
  if (last != 'j' && last != 'i') {
    std::size_t pos = 0;
    const double re = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("bad complex literal");
    return Complex(re, 0.0);
  }
  s.pop_back();
  // Find the sign separating the real and imaginary parts (not a leading
  // sign and not an exponent sign).
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  double re = 0.0;
  std::string imag_part = s;
  if (split != std::string::npos) {
    re = std::stod(s.substr(0, split));
    imag_part = s.substr(split);
  }
  double im;
  if (imag_part.empty() || imag_part == "+") im = 1.0;
  else if (imag_part == "-") im = -1.0;
  else im = std::stod(imag_part);
  return Complex(re, im);
}

std::string format_complex(Complex z) {
  std::ostringstream out;
  out.precision(17);
  out << z.real();
  if (z.imag() != 0.0) {
    out << (z.imag() >= 0 ? "+" : "") << z.imag() << "j";
  }
  return out.str();
}

}  // namespace pptes
