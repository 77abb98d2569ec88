#ifndef PPTES_STATEFILE_HPP
#define PPTES_STATEFILE_HPP

#include <map>
#include <string>

#include "pptes/multiqubit.hpp"

namespace pptes {

/// On-disk representation of a state: party dimensions, a row-major matrix
/// of [re, im] pairs, a tolerance, and free-form provenance.
struct StateFile {
  std::vector<int> dims;  // e.g. {2,2,2}
  Matrix matrix;
  double tolerance = 1e-10;
  std::map<std::string, std::string> meta;

  int qubit_count() const;
  MultiQubitState to_state() const;

  static StateFile from_state(const MultiQubitState& state,
                              std::map<std::string, std::string> meta = {});
};

std::string to_json(const StateFile& sf);
StateFile statefile_from_json(const std::string& text);

void save_statefile(const StateFile& sf, const std::string& path);
StateFile load_statefile(const std::string& path);

/// Parses "re", "re+imj" or "re-imj" (also accepts a trailing i).
Complex parse_complex(const std::string& text);
std::string format_complex(Complex z);

}  // namespace pptes

#endif
