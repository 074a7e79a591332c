#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cdiag/diagram.hpp"
#include "cdiag/elliott.hpp"
#include "cdiag/io.hpp"
#include "cdiag/k_theory.hpp"
#include "cdiag/spectrum.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;  // mathematically negative result
constexpr int kUsage = 2;     // usage or parse error

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot write " + out_path);
    out << text;
  }
}

bool is_validation_message(const std::string& what) {
  return what.rfind("invalid diagram:", 0) == 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"labeled Bratteli diagram toolkit"};
  app.require_subcommand(1);

  std::string file_a, file_b, out_path, gamma_text, seed_text;
  int depth = 3;
  int search_bound = 25;
  std::string epsilon_text = "1/16";
  int horizon = 6;
  unsigned long long seed_unused = 0;  // reserved; all commands are deterministic

  auto* c_validate = app.add_subcommand("validate", "check a diagram document");
  c_validate->add_option("file", file_a)->required();

  auto* c_dot = app.add_subcommand("dot", "render a diagram to DOT");
  c_dot->add_option("file", file_a)->required();
  c_dot->add_option("--out", out_path);

  auto* c_k0 = app.add_subcommand("k0", "ordered K0 data per stage");
  c_k0->add_option("file", file_a)->required();
  c_k0->add_option("--depth", depth);

  auto* c_components = app.add_subcommand("components", "count spectrum components at a depth");
  c_components->add_option("file", file_a)->required();
  c_components->add_option("--depth", depth)->required();

  auto* c_classify = app.add_subcommand("classify", "spectrum report with path classes");
  c_classify->add_option("file", file_a)->required();
  c_classify->add_option("--depth", depth);

  auto* c_witness = app.add_subcommand("witness", "spectral incompleteness witness");
  c_witness->add_option("file", file_a)->required();
  c_witness->add_option("--gamma", gamma_text);
  c_witness->add_option("--out", out_path);

  auto* c_iso = app.add_subcommand("isomorphic", "decide an AF pair by intertwining");
  c_iso->add_option("fileA", file_a)->required();
  c_iso->add_option("fileB", file_b)->required();
  c_iso->add_option("--depth", depth);
  c_iso->add_option("--search-bound", search_bound);
  c_iso->add_option("--seed", seed_text);
  c_iso->add_option("--out", out_path);

  auto* c_simpl = app.add_subcommand("simplicity", "sufficient simplicity check");
  c_simpl->add_option("file", file_a)->required();
  c_simpl->add_option("--epsilon", epsilon_text);
  c_simpl->add_option("--horizon", horizon);
  (void)seed_unused;

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (c_validate->parsed()) {
      try {
        const cdiag::Diagram d = cdiag::parse_spec(slurp(file_a));
        std::cout << "valid: " << d.depth() << " levels";
        if (d.repeat_last) std::cout << ", repeating";
        std::cout << "\n";
        return kOk;
      } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return is_validation_message(e.what()) ? kNegative : kUsage;
      }
    }
    if (c_dot->parsed()) {
      emit(cdiag::export_dot(cdiag::parse_spec(slurp(file_a))), out_path);
      return kOk;
    }
    if (c_k0->parsed()) {
      const cdiag::Diagram d = cdiag::parse_spec(slurp(file_a));
      const cdiag::Diagram full = cdiag::materialize(d, depth + 1);
      std::ostringstream os;
      for (int n = 0; n < full.depth(); ++n) {
        const cdiag::StageK0 k = cdiag::stage_k0(full, n);
        os << "stage " << (n + 1) << ": Z^" << k.rank << ", unit (";
        for (std::size_t i = 0; i < k.order_unit.size(); ++i) {
          if (i) os << ", ";
          os << k.order_unit[i];
        }
        os << ")\n";
        if (n + 1 < full.depth()) {
          const cdiag::IntMatrix m = cdiag::multiplicity_matrix(full, n);
          os << "  transition:";
          for (const auto& row : m) {
            os << " [";
            for (std::size_t c = 0; c < row.size(); ++c) {
              if (c) os << " ";
              os << row[c];
            }
            os << "]";
          }
          os << "\n";
        }
      }
      bool af = true;
      for (const auto& level : full.levels) {
        for (const auto& s : level) af = af && s.base == cdiag::Base::Point;
      }
      if (af && full.levels[0].size() == 1) {
        os << "supernatural invariant: " << cdiag::supernatural_invariant(d, depth + 1).str()
           << "\n";
      }
      emit(os.str(), out_path);
      return kOk;
    }
    if (c_components->parsed()) {
      std::cout << cdiag::count_components(cdiag::parse_spec(slurp(file_a)), depth) << "\n";
      return kOk;
    }
    if (c_classify->parsed()) {
      emit(cdiag::spectrum_report(cdiag::parse_spec(slurp(file_a)), depth), out_path);
      return kOk;
    }
    if (c_witness->parsed()) {
      std::vector<cdiag::PLMap> gammas;
      if (!gamma_text.empty()) gammas.push_back(cdiag::parse_label_text(gamma_text));
      const cdiag::WitnessReport rep =
          cdiag::incompleteness_witness(cdiag::parse_spec(slurp(file_a)), gammas);
      std::cout << rep.text;
      if (!out_path.empty()) emit(cdiag::serialize_spec(rep.witness), out_path);
      return rep.witnessed ? kOk : kNegative;
    }
    if (c_iso->parsed()) {
      const cdiag::Diagram A = cdiag::parse_spec(slurp(file_a));
      const cdiag::Diagram B = cdiag::parse_spec(slurp(file_b));
      if (!seed_text.empty()) {
        const cdiag::IntertwiningResult res = cdiag::build_intertwining(
            A, B, cdiag::parse_int_matrix(seed_text), depth, search_bound);
        if (const auto* cert = std::get_if<cdiag::IntertwiningCertificate>(&res)) {
          const cdiag::CertificateReport check = cdiag::verify_certificate(*cert, A, B);
          std::cout << check.text;
          if (!out_path.empty()) emit(cdiag::serialize_certificate(*cert), out_path);
          return check.ok ? kOk : kNegative;
        }
        const auto& ref = std::get<cdiag::Refutation>(res);
        std::cout << "no certificate up to bound " << ref.bound << ": " << ref.detail << "\n";
        return kNegative;
      }
      const cdiag::Decision dec =
          cdiag::decide_af_pair_isomorphic(A, B, depth, search_bound);
      std::cout << dec.text;
      if (dec.isomorphic_witnessed && !out_path.empty()) {
        emit(cdiag::serialize_certificate(*dec.certificate), out_path);
      }
      return dec.isomorphic_witnessed ? kOk : kNegative;
    }
    if (c_simpl->parsed()) {
      const bool ok = cdiag::check_simplicity_sufficient(
          cdiag::parse_spec(slurp(file_a)), cdiag::parse_fraction(epsilon_text), horizon);
      std::cout << (ok ? "sufficient criterion verified"
                       : "not established (criterion is sufficient only)")
                << "\n";
      return ok ? kOk : kNegative;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
