// Command-line surface: point generation, discrepancy values, Haar
// coefficient tables, verification suites, N-sweeps, and limsup-constant
// estimation. Exit codes: 0 success, 1 failed mathematical check, 2
// usage/resource error.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "vdc/discrepancy.hpp"
#include "vdc/haar.hpp"
#include "vdc/sequences.hpp"
#include "vdc/sweep.hpp"
#include "vdc/verify.hpp"

namespace {

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

vdc::SequenceKind require_kind(const std::string& name) {
  const auto kind = vdc::parse_kind(name);
  if (!kind || *kind == vdc::SequenceKind::custom)
    throw std::invalid_argument("unknown kind '" + name + "' (vdc|reflected|sym)");
  return *kind;
}

std::vector<double> parse_p_list(const std::string& text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string item =
        text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (item.empty()) throw std::invalid_argument("empty entry in p list");
    out.push_back(vdc::parse_p(item));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::uint64_t parse_u64(const std::string& text) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("invalid count '" + text + "'");
  }
  if (used != text.size()) throw std::invalid_argument("invalid count '" + text + "'");
  return v;
}

// N specs: "42", "lo..hi", "lo..hi:stride", or a comma list.
std::vector<std::uint64_t> parse_n_spec(const std::string& text) {
  if (text.find(',') != std::string::npos) {
    std::vector<std::uint64_t> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const std::size_t comma = text.find(',', pos);
      const std::string item =
          text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      out.push_back(parse_u64(item));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    return out;
  }
  const std::size_t dots = text.find("..");
  if (dots == std::string::npos) return {parse_u64(text)};
  const std::string lo_text = text.substr(0, dots);
  std::string hi_text = text.substr(dots + 2);
  std::uint64_t stride = 1;
  const std::size_t colon = hi_text.find(':');
  if (colon != std::string::npos) {
    stride = parse_u64(hi_text.substr(colon + 1));
    hi_text.resize(colon);
  }
  return vdc::n_range(parse_u64(lo_text), parse_u64(hi_text), stride);
}

std::pair<int, int> parse_window_range(const std::string& text) {
  const std::size_t colon = text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("window range must be k_min:k_max");
  const std::uint64_t a = parse_u64(text.substr(0, colon));
  const std::uint64_t b = parse_u64(text.substr(colon + 1));
  if (a < 1 || b < a || b > 40)
    throw std::invalid_argument("window range must satisfy 1 <= k_min <= k_max <= 40");
  return {static_cast<int>(a), static_cast<int>(b)};
}

template <typename Fn>
int with_output(const std::string& path, Fn&& fn) {
  if (path.empty()) {
    fn(std::cout);
    std::cout.flush();
    return 0;
  }
  std::ofstream file(path);
  if (!file) {
    std::cerr << "error: cannot open output file '" << path << "'\n";
    return 2;
  }
  fn(file);
  file.flush();
  if (!file) {
    std::cerr << "error: failed writing output file '" << path << "'\n";
    return 2;
  }
  return 0;
}

int cmd_gen(const std::string& kind_name, std::uint64_t n, const std::string& mode) {
  const vdc::SequenceKind kind = require_kind(kind_name);
  if (n < 1) throw std::invalid_argument("gen: need N >= 1");
  if (mode == "exact") {
    const vdc::PointSet ps = kind == vdc::SequenceKind::vdc ? vdc::vdc_prefix(n)
                             : kind == vdc::SequenceKind::reflected
                                 ? vdc::reflected_prefix(n)
                                 : vdc::sym_prefix(n);
    for (const auto& p : ps.points()) std::cout << p.str() << '\n';
  } else {
    for (const std::uint64_t v : vdc::q63::prefix(kind, n))
      std::cout << fmt17(std::ldexp(static_cast<double>(v), -63)) << '\n';
  }
  return 0;
}

int cmd_disc(const std::string& kind_name, std::uint64_t n, const std::string& p_text,
             const std::string& mode, const std::string& out) {
  vdc::SweepSpec spec;
  spec.kind = require_kind(kind_name);
  if (n < 1) throw std::invalid_argument("disc: need N >= 1");
  spec.p_list = {vdc::parse_p(p_text)};
  spec.n_values = {n};
  spec.exact = mode == "exact";
  return with_output(out, [&](std::ostream& os) { vdc::run_sweep(spec, os); });
}

int cmd_haar(const std::string& kind_name, std::uint64_t n, int j_max,
             const std::string& out) {
  const vdc::SequenceKind kind = require_kind(kind_name);
  if (n < 1) throw std::invalid_argument("haar: need N >= 1");
  const vdc::PointSet ps = kind == vdc::SequenceKind::vdc ? vdc::vdc_prefix(n)
                           : kind == vdc::SequenceKind::reflected
                               ? vdc::reflected_prefix(n)
                               : vdc::sym_prefix(n);
  const vdc::CoefficientTable table = vdc::mu_table(ps, j_max);
  return with_output(out, [&](std::ostream& os) {
    os << "j,m,mu_num,mu_den\n";
    const auto row = [&os](int j, std::uint64_t m, const vdc::Rational& r) {
      os << j << ',' << m << ',' << r.numerator().get_str() << ','
         << r.denominator().get_str() << '\n';
    };
    row(-1, 0, table.mu_first());
    for (int j = 0; j <= table.j_max(); ++j) {
      const auto& lvl = table.level(j);
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << j); ++m) row(j, m, lvl.at(m));
    }
  });
}

int cmd_verify(const std::string& suite, std::uint64_t n_max, int j_max) {
  const auto reports = vdc::verify_suite(suite, n_max, j_max);
  bool ok = true;
  for (const auto& r : reports) {
    std::printf("suite=%s checks=%llu failures=%llu time=%.2fs\n", r.suite.c_str(),
                static_cast<unsigned long long>(r.checks),
                static_cast<unsigned long long>(r.failure_count), r.seconds);
    for (const auto& w : r.failures) std::printf("  witness %s\n", w.c_str());
    if (r.failure_count > r.failures.size())
      std::printf("  ... and %llu more\n",
                  static_cast<unsigned long long>(r.failure_count - r.failures.size()));
    ok = ok && r.ok();
  }
  std::fflush(stdout);
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact van der Corput / symmetrized-sequence discrepancy toolkit"};
  app.require_subcommand(1);

  std::string kind, mode = "float", p_text = "2", out, n_spec, windows;
  std::uint64_t n = 1, n_max = 1024, samples = 0;
  int j_max = 12;
  std::string suite;

  auto* gen = app.add_subcommand("gen", "Print the first N points, one per line");
  gen->add_option("--kind", kind, "vdc|reflected|sym")->required();
  gen->add_option("--n", n, "number of points")->required();
  std::string gen_mode = "exact";
  gen->add_option("--mode", gen_mode, "exact|float (default exact)")
      ->check(CLI::IsMember({"exact", "float"}));

  auto* disc = app.add_subcommand("disc", "One L_p discrepancy value as a CSV row");
  disc->add_option("--kind", kind, "vdc|reflected|sym")->required();
  disc->add_option("--n", n, "prefix length")->required();
  disc->add_option("--p", p_text, "inf or a real >= 1 (default 2)");
  disc->add_option("--mode", mode, "exact|float (default float)")
      ->check(CLI::IsMember({"exact", "float"}));
  disc->add_option("--out", out, "output file (default stdout)");

  auto* haar = app.add_subcommand("haar", "Exact Haar coefficients as CSV");
  haar->add_option("--kind", kind, "vdc|reflected|sym")->required();
  haar->add_option("--n", n, "prefix length")->required();
  haar->add_option("--j-max", j_max, "finest scale (>= -1, default 12)");
  haar->add_option("--out", out, "output file (default stdout)");

  auto* verify = app.add_subcommand("verify", "Run exact verification suites");
  verify
      ->add_option("suite", suite,
                   "phi|mu-first|decomposition|coefficient-bounds|parseval|chain|all")
      ->required();
  verify->add_option("--n-max", n_max, "scale knob (default 1024)");
  verify->add_option("--j-max", j_max, "scale knob (default 12)");

  auto* sweep = app.add_subcommand("sweep", "L_p discrepancies over many N, CSV");
  sweep->add_option("--kind", kind, "vdc|reflected|sym")->required();
  sweep->add_option("--p", p_text, "comma list of inf or reals >= 1")->required();
  sweep->add_option("--n", n_spec, "N spec: 'n', 'lo..hi', 'lo..hi:stride', 'a,b,c'");
  sweep->add_option("--windows", windows, "dyadic windows k_min:k_max");
  sweep->add_option("--samples", samples, "samples per window (default 64)");
  sweep->add_option("--mode", mode, "exact|float (default float)")
      ->check(CLI::IsMember({"exact", "float"}));
  sweep->add_option("--out", out, "output file (default stdout)");

  auto* constants = app.add_subcommand(
      "constants", "Windowed maxima of the scaled discrepancy statistic, CSV");
  constants->add_option("--kind", kind, "vdc|reflected|sym")->required();
  constants->add_option("--p", p_text, "inf or a real >= 1")->required();
  constants->add_option("--windows", windows, "dyadic windows k_min:k_max")->required();
  constants->add_option("--samples", samples, "samples per window (default 2048)");
  constants->add_option("--out", out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) return cmd_gen(kind, n, gen_mode);
    if (disc->parsed()) return cmd_disc(kind, n, p_text, mode, out);
    if (haar->parsed()) return cmd_haar(kind, n, j_max, out);
    if (verify->parsed()) return cmd_verify(suite, n_max, j_max);
    if (sweep->parsed()) {
      vdc::SweepSpec spec;
      spec.kind = require_kind(kind);
      spec.p_list = parse_p_list(p_text);
      spec.exact = mode == "exact";
      if (n_spec.empty() == windows.empty())
        throw std::invalid_argument("sweep: give exactly one of --n and --windows");
      if (!n_spec.empty()) {
        spec.n_values = parse_n_spec(n_spec);
      } else {
        const auto [k_min, k_max] = parse_window_range(windows);
        const std::uint64_t per_window = samples == 0 ? 64 : samples;
        for (int k = k_min; k <= k_max; ++k) {
          const auto ns = vdc::window_samples(k, per_window);
          spec.n_values.insert(spec.n_values.end(), ns.begin(), ns.end());
        }
      }
      return with_output(out, [&](std::ostream& os) { vdc::run_sweep(spec, os); });
    }
    if (constants->parsed()) {
      const auto [k_min, k_max] = parse_window_range(windows);
      const auto stats =
          vdc::constants_windows(require_kind(kind), vdc::parse_p(p_text), k_min, k_max,
                                 samples == 0 ? 2048 : samples);
      return with_output(out, [&](std::ostream& os) { vdc::write_constants_csv(stats, os); });
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
