// Command-line front end: construct the named state families, classify
// states, compute invariants, and compare states for SLOCC equivalence.
//
// Exit codes: 0 success, 1 parse error, 2 parameter error,
// 3 verification failure.

#include <filesystem>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pptes/classify.hpp"
#include "pptes/families.hpp"
#include "pptes/lorentz.hpp"
#include "pptes/statefile.hpp"

namespace {

using namespace pptes;
using nlohmann::json;

constexpr int kExitParse = 1;
constexpr int kExitParameter = 2;
constexpr int kExitVerification = 3;

void write_output(const StateFile& sf, const std::string& out_path) {
  if (out_path.empty())
    std::cout << to_json(sf) << "\n";
  else
    save_statefile(sf, out_path);
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json report_json(const ClassificationReport& rep) {
  json j;
  j["invariant"] = rep.invariant.value;
  j["invariant_imag_residual"] = rep.invariant.imag_residual;
  j["type"] = rep.type == StateType::TypeII ? "II" : "I";
  j["upb_constructible"] = rep.upb_verdict == UpbVerdict::UpbConstructible;
  if (rep.canonical_t_orbit) {
    j["canonical_t"] = complex_json(rep.canonical_t_orbit->representative());
    json orbit = json::array();
    for (const Complex& o : rep.canonical_t_orbit->orbit())
      orbit.push_back(complex_json(o));
    j["canonical_t_orbit"] = orbit;
  }
  if (rep.t_triple) {
    json ts = json::array();
    for (const Complex& t : *rep.t_triple) ts.push_back(complex_json(t));
    j["t_triple"] = ts;
  }
  if (rep.in_general_position)
    j["general_position"] = *rep.in_general_position;
  j["kernel_product_count"] = rep.kernel_products.size();
  j["diagnostics"] = rep.diagnostics;
  return j;
}

json verification_json(const VerificationReport& rep) {
  json j;
  j["hermitian_psd"] = rep.hermitian_psd;
  j["rank4"] = rep.rank4;
  j["ppt"] = rep.ppt;
  j["partial_transposes_rank4"] = rep.pt_rank4;
  j["range_completely_entangled"] = rep.range_ces;
  j["range_product_counts"] = rep.range_product_counts;
  j["kernel_product_counts"] = rep.kernel_product_counts;
  j["entangled_rank4_pptes"] = rep.entangled_rank4_pptes;
  j["failures"] = rep.failures;
  return j;
}

void print_pretty_report(const ClassificationReport& rep) {
  std::cout << "Lorentz invariant: " << rep.invariant.value
            << " (imag residual " << rep.invariant.imag_residual << ")\n";
  std::cout << "Type: " << (rep.type == StateType::TypeII ? "II" : "I")
            << "\n";
  if (rep.canonical_t_orbit)
    std::cout << "Canonical parameter t = "
              << format_complex(rep.canonical_t_orbit->representative())
              << "\n";
  if (rep.t_triple)
    std::cout << "Kernel cross ratios: "
              << format_complex((*rep.t_triple)[0]) << ", "
              << format_complex((*rep.t_triple)[1]) << ", "
              << format_complex((*rep.t_triple)[2]) << "\n";
  std::cout << "UPB-constructible: "
            << (rep.upb_verdict == UpbVerdict::UpbConstructible ? "yes" : "no")
            << "\n";
  for (const auto& d : rep.diagnostics) std::cout << "note: " << d << "\n";
}

MultiQubitState load_three_qubit_state(const std::string& path) {
  const StateFile sf = load_statefile(path);
  if (sf.dims != std::vector<int>{2, 2, 2})
    throw std::invalid_argument("expected a three-qubit state (dims [2,2,2])");
  return sf.to_state();
}

int run(int argc, char** argv) {
  CLI::App app{"Three-qubit rank-four PPT entangled state toolkit"};
  app.require_subcommand(1);

  // construct
  auto* construct = app.add_subcommand(
      "construct", "Build a named state family and emit a state file");
  std::string family, t_text = "2", out_path, alpha_formula = "ex17";
  std::vector<double> thetas, probs;
  int n_qubits = 3, mixture_size = 3;
  construct->add_option("family", family,
                        "one of: upb, type2, qp, example10, conjecture")
      ->required();
  construct->add_option("--t", t_text, "complex parameter, e.g. 2 or 1+2j");
  construct->add_option("--theta", thetas, "three angles in (0, pi/2)")
      ->expected(3);
  construct->add_option("--p", probs, "five positive weights summing to 1")
      ->expected(5);
  construct->add_option("--alpha-formula", alpha_formula, "ex13 or ex17")
      ->check(CLI::IsMember({"ex13", "ex17"}));
  construct->add_option("--n", n_qubits, "qubit count (conjecture family)");
  construct->add_option("--m", mixture_size, "mixture size (conjecture family)");
  construct->add_option("--out", out_path, "output path (default stdout)");

  // classify
  auto* classify_cmd =
      app.add_subcommand("classify", "Run the classification pipeline");
  std::string input_path, batch_dir;
  bool pretty = false;
  double tol = 1e-8;
  classify_cmd->add_option("input", input_path, "state file (JSON)");
  classify_cmd->add_option("--batch", batch_dir,
                           "classify every .json file in a directory");
  classify_cmd->add_flag("--pretty", pretty, "add a human-readable summary");
  classify_cmd->add_option("--tol", tol, "numerical tolerance");

  // invariant
  auto* invariant_cmd =
      app.add_subcommand("invariant", "Compute the Lorentz invariant");
  std::string inv_path;
  invariant_cmd->add_option("input", inv_path, "state file (JSON)")
      ->required();

  // compare
  auto* compare_cmd = app.add_subcommand(
      "compare", "Compare two states for SLOCC equivalence");
  std::string path_a, path_b;
  compare_cmd->add_option("a", path_a, "first state file")->required();
  compare_cmd->add_option("b", path_b, "second state file")->required();

  // verify
  auto* verify_cmd =
      app.add_subcommand("verify", "Run the rank-four PPTES verification");
  std::string verify_path;
  verify_cmd->add_option("input", verify_path, "state file (JSON)")
      ->required();

  // product-vectors
  auto* pv_cmd = app.add_subcommand(
      "product-vectors", "List bipartite product vectors in range or kernel");
  std::string pv_path, subspace = "range", partition = "a";
  pv_cmd->add_option("input", pv_path, "state file (JSON)")->required();
  pv_cmd->add_option("--subspace", subspace, "range or kernel")
      ->check(CLI::IsMember({"range", "kernel"}));
  pv_cmd->add_option("--partition", partition, "a, b, or c")
      ->check(CLI::IsMember({"a", "b", "c"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitParameter;
  }

  try {
    if (construct->parsed()) {
      std::map<std::string, std::string> meta{{"family", family}};
      MultiQubitState state = [&]() -> MultiQubitState {
        if (family == "upb") {
          if (thetas.size() != 3)
            throw std::invalid_argument("upb needs --theta t1 t2 t3");
          meta["theta"] = std::to_string(thetas[0]) + " " +
                          std::to_string(thetas[1]) + " " +
                          std::to_string(thetas[2]);
          return upb_state({thetas[0], thetas[1], thetas[2]});
        }
        if (family == "type2") {
          meta["t"] = t_text;
          return type2_state(parse_complex(t_text));
        }
        if (family == "qp") {
          if (probs.size() != 5)
            throw std::invalid_argument("qp needs --p p1 p2 p3 p4 p5");
          QpSpec spec{{probs[0], probs[1], probs[2], probs[3], probs[4]},
                      alpha_formula == "ex17"
                          ? QpAlphaFormula::kHalfCoefficients
                          : QpAlphaFormula::kNinthCoefficients};
          meta["alpha_formula"] = alpha_formula;
          return qp_state(spec);
        }
        if (family == "example10") {
          meta["t"] = t_text;
          return example10_state(parse_complex(t_text));
        }
        if (family == "conjecture") {
          meta["n"] = std::to_string(n_qubits);
          meta["m"] = std::to_string(mixture_size);
          return extremal_rank2_mixture(n_qubits, mixture_size);
        }
        throw std::invalid_argument("unknown family: " + family);
      }();
      write_output(StateFile::from_state(state, std::move(meta)), out_path);
      return 0;
    }

    if (classify_cmd->parsed()) {
      std::vector<std::string> paths;
      if (!batch_dir.empty()) {
        for (const auto& entry :
             std::filesystem::directory_iterator(batch_dir))
          if (entry.path().extension() == ".json")
            paths.push_back(entry.path().string());
        std::sort(paths.begin(), paths.end());
      } else if (!input_path.empty()) {
        paths.push_back(input_path);
      } else {
        throw std::invalid_argument("classify needs an input file or --batch");
      }
      bool any_failed = false;
      for (const auto& path : paths) {
        const MultiQubitState state = load_three_qubit_state(path);
        const VerificationReport ver = verify_rank4_pptes(state);
        if (!ver.entangled_rank4_pptes) {
          json j;
          j["input"] = path;
          j["verification"] = verification_json(ver);
          std::cout << j.dump(2) << "\n";
          any_failed = true;
          continue;
        }
        const ClassificationReport rep = classify(state);
        json j = report_json(rep);
        if (!batch_dir.empty()) j["input"] = path;
        std::cout << j.dump(2) << "\n";
        if (pretty) print_pretty_report(rep);
      }
      return any_failed ? kExitVerification : 0;
    }

    if (invariant_cmd->parsed()) {
      const StateFile sf = load_statefile(inv_path);
      const auto inv = lorentz_invariant(sf.to_state().normalized());
      json j;
      j["invariant"] = inv.value;
      j["imag_residual"] = inv.imag_residual;
      std::cout << j.dump(2) << "\n";
      return 0;
    }

    if (compare_cmd->parsed()) {
      const MultiQubitState a = load_three_qubit_state(path_a);
      const MultiQubitState b = load_three_qubit_state(path_b);
      for (const auto* s : {&a, &b}) {
        if (!verify_rank4_pptes(*s).entangled_rank4_pptes) {
          std::cerr << "input is not a rank-four PPTES\n";
          return kExitVerification;
        }
      }
      const SloccVerdict verdict = slocc_compare(a, b);
      json j;
      j["verdict"] = verdict == SloccVerdict::Equivalent      ? "Equivalent"
                     : verdict == SloccVerdict::NotEquivalent ? "NotEquivalent"
                                                              : "Inconclusive";
      json orbits = json::array();
      for (const auto* s : {&a, &b}) {
        json orbit = json::array();
        for (const Complex& o : characteristic_set(*s).orbit())
          orbit.push_back(complex_json(o));
        orbits.push_back(orbit);
      }
      j["orbits"] = orbits;
      std::cout << j.dump(2) << "\n";
      return 0;
    }

    if (verify_cmd->parsed()) {
      const MultiQubitState state = load_three_qubit_state(verify_path);
      const VerificationReport rep = verify_rank4_pptes(state);
      std::cout << verification_json(rep).dump(2) << "\n";
      return rep.entangled_rank4_pptes ? 0 : kExitVerification;
    }

    if (pv_cmd->parsed()) {
      const MultiQubitState state = load_three_qubit_state(pv_path);
      const Matrix& rho = state.matrix();
      Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
      const double emax = es.eigenvalues().cwiseAbs().maxCoeff();
      std::vector<int> idx;
      for (int i = 0; i < 8; ++i) {
        const bool in_kernel = std::abs(es.eigenvalues()(i)) <= 1e-10 * emax;
        if (in_kernel == (subspace == "kernel")) idx.push_back(i);
      }
      Matrix basis(8, static_cast<Eigen::Index>(idx.size()));
      for (std::size_t i = 0; i < idx.size(); ++i)
        basis.col(static_cast<Eigen::Index>(i)) =
            es.eigenvectors().col(idx[i]);
      const Partition part = partition == "a"   ? Partition::A_BC
                             : partition == "b" ? Partition::B_AC
                                                : Partition::C_AB;
      const auto recs = bipartite_products_in_subspace(basis, part);
      json out = json::array();
      for (const auto& r : recs) {
        json j;
        json vec = json::array();
        for (int i = 0; i < 8; ++i) vec.push_back(complex_json(r.vector(i)));
        j["vector"] = vec;
        j["local"] = {complex_json(r.local(0)), complex_json(r.local(1))};
        j["residual"] = r.residual;
        j["tripartite"] = r.tripartite.has_value();
        out.push_back(j);
      }
      std::cout << out.dump(2) << "\n";
      return 0;
    }
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::invalid_argument& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return kExitParameter;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerification;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
