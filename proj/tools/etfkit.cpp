#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "detf/equiv.hpp"
#include "detf/gramio.hpp"
#include "detf/hadamard.hpp"
#include "detf/numopt.hpp"
#include "detf/paley.hpp"
#include "detf/search.hpp"

using namespace detf;

namespace {

constexpr int kOk = 0;
constexpr int kFalse = 1;
constexpr int kUsage = 2;
constexpr int kInternal = 3;

const char* yes_no(bool b) { return b ? "yes" : "no"; }

void emit_gram(const GramMatrix& g, bool exact, const std::string& out_path) {
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) fail(ErrorKind::InvalidInput, "cannot open " + out_path);
    os = &file;
  }
  if (exact)
    write_exact_gram(*os, g);
  else
    write_gram(*os, g);
}

GramMatrix load_gram(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::InvalidInput, "cannot open " + path);
  return read_gram(in);
}

std::string signs_to_string(const SignVector& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

SignVector parse_signs(const std::string& text) {
  std::vector<int> v;
  std::string t = text;
  for (char& ch : t)
    if (ch == ',') ch = ' ';
  std::istringstream ss(t);
  int x;
  while (ss >> x) v.push_back(x);
  if (!ss.eof()) fail(ErrorKind::InvalidInput, "signs must be integers separated by commas or spaces");
  return SignVector(std::move(v));
}

int run_verify(const std::string& a_hex, const std::string& b_hex, int n) {
  const SignVector a = hex_decode(a_hex, n), b = hex_decode(b_hex, n);
  const IntMatrix h = assemble(a, b);
  const bool skew = is_skew_hadamard(h) && satisfies_skew_constraint(a);
  bool etf = false, regular = false;
  if (skew) {
    const GramMatrix g = gram_M(h);
    etf = is_etf_gram(g, n, 1e-9) && is_exact_etf_view(*g.exact());
    if (etf) regular = is_regular(configuration_from_gram(g, n));
  }
  std::cout << "skew-Hadamard: " << yes_no(skew) << "; ETF(" << 2 * n << "," << n << "): " << yes_no(etf)
            << "; regular: " << yes_no(regular) << "\n";
  return skew && etf && regular ? kOk : kFalse;
}

void print_table(const std::vector<SolutionRecord>& recs) {
  std::cout << "n\ta\tb\ttype\tclass\n";
  for (const auto& r : recs) std::cout << format_record(r) << "\n";
}

int run_equiv(const std::string& left, const std::string& right) {
  const GramMatrix g0 = load_gram(left), g1 = load_gram(right);
  const auto res = are_equivalent(g0, g1);
  std::cout << "equivalent: " << yes_no(res.equivalent) << "\n";
  if (res.certificate) {
    std::cout << "sigma:";
    for (int s : res.certificate->sigma) std::cout << ' ' << s;
    std::cout << "\nphases:";
    static const char* names[4] = {"1", "i", "-1", "-i"};
    for (int q : res.certificate->quarter_turns) std::cout << ' ' << names[q];
    std::cout << "\n";
  }
  return res.equivalent ? kOk : kFalse;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dihedral ETF(2n,n) toolkit: skew Hadamard search, verification and classification"};
  app.require_subcommand(1);

  std::string a_hex, b_hex, hex, signs, in_path, out_path, left, right, form = "M";
  int n = 0, q = 0, jobs = 1, restarts = 10, max_iter = 200000;
  bool dbl = false, conj = false, exact = false, strict = false;
  double p = 4;
  std::uint64_t seed = 1;
  std::string format = "table";

  auto* verify = app.add_subcommand("verify", "check a table row (a, b) for n");
  verify->add_option("--a", a_hex, "first row of P in hex")->required();
  verify->add_option("--b", b_hex, "first row of Q in hex")->required();
  verify->add_option("--n", n, "block size")->required()->check(CLI::Range(1, 64));

  auto* decode = app.add_subcommand("decode", "hex string to sign vector");
  decode->add_option("--hex", hex)->required();
  decode->add_option("--n", n)->required()->check(CLI::Range(1, 64));

  auto* encode = app.add_subcommand("encode", "sign vector to hex string");
  encode->add_option("--signs", signs, "entries, e.g. 1,-1,-1,1")->required();

  auto* paley = app.add_subcommand("paley", "emit a Paley-type Gram");
  paley->add_option("--q", q, "prime power, 3 mod 4")->required();
  paley->add_flag("--double", dbl, "double Paley");
  paley->add_flag("--conj", conj, "entrywise conjugate");
  paley->add_flag("--exact", exact, "emit the Gaussian-integer view");
  paley->add_option("--out", out_path);

  auto* dpaley = app.add_subcommand("double-paley", "emit a double Paley Gram");
  dpaley->add_option("--q", q)->required();
  dpaley->add_flag("--conj", conj);
  dpaley->add_flag("--exact", exact);
  dpaley->add_option("--out", out_path);

  auto* gramc = app.add_subcommand("gram", "emit the Gram of a pair (a, b)");
  gramc->add_option("--a", a_hex)->required();
  gramc->add_option("--b", b_hex)->required();
  gramc->add_option("--n", n)->required()->check(CLI::Range(1, 64));
  gramc->add_option("--form", form, "M or shm")->check(CLI::IsMember({"M", "shm"}));
  gramc->add_flag("--exact", exact);
  gramc->add_option("--out", out_path);

  auto* search = app.add_subcommand("search", "enumerate 2-negacirculant skew Hadamard matrices");
  search->add_option("--n", n)->required()->check(CLI::Range(2, 32));
  search->add_option("--jobs", jobs)->check(CLI::Range(1, 1024));
  search->add_option("--out", out_path, "record file");

  auto* classify_cmd = app.add_subcommand("classify", "switching classes with Paley types");
  classify_cmd->add_option("--n", n)->required()->check(CLI::Range(2, 32));
  classify_cmd->add_option("--in", in_path, "records from a previous search");
  classify_cmd->add_option("--jobs", jobs)->check(CLI::Range(1, 1024));
  classify_cmd->add_option("--format", format)->check(CLI::IsMember({"table", "records"}));

  auto* equiv = app.add_subcommand("equiv", "decide switching equivalence of two Gram files");
  equiv->add_option("--left", left)->required();
  equiv->add_option("--right", right)->required();

  auto* minimize = app.add_subcommand("minimize", "minimise the frame potential over fiducials");
  minimize->add_option("--n", n)->required()->check(CLI::Range(1, 64));
  minimize->add_option("--p", p)->check(CLI::Range(1.0, 16.0));
  minimize->add_option("--restarts", restarts)->check(CLI::Range(1, 100000));
  minimize->add_option("--seed", seed);
  minimize->add_option("--max-iterations", max_iter)->check(CLI::Range(1, 1 << 30));
  minimize->add_option("--jobs", jobs)->check(CLI::Range(1, 1024));
  minimize->add_flag("--strict", strict, "strict dihedral orbit (diagnostic)");

  auto* disc = app.add_subcommand("discover", "numerical search followed by exactification");
  disc->add_option("--n", n)->required()->check(CLI::Range(1, 64));
  disc->add_option("--p", p)->check(CLI::Range(1.0, 16.0));
  disc->add_option("--restarts", restarts)->check(CLI::Range(1, 100000));
  disc->add_option("--seed", seed);
  disc->add_option("--max-iterations", max_iter)->check(CLI::Range(1, 1 << 30));
  disc->add_option("--jobs", jobs)->check(CLI::Range(1, 1024));

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kUsage;
  }

  try {
    if (*verify) return run_verify(a_hex, b_hex, n);
    if (*decode) {
      std::cout << signs_to_string(hex_decode(hex, n)) << "\n";
      return kOk;
    }
    if (*encode) {
      std::cout << hex_encode(parse_signs(signs)) << "\n";
      return kOk;
    }
    if (*paley || *dpaley) {
      const FiniteField f(q);
      const bool d = dbl || *dpaley;
      GramMatrix g = d ? double_paley_gram(f) : paley_gram(f);
      if (conj) g = g.conjugate();
      emit_gram(g, exact, out_path);
      return kOk;
    }
    if (*gramc) {
      const IntMatrix h = assemble(hex_decode(a_hex, n), hex_decode(b_hex, n));
      emit_gram(form == "shm" ? gram_lemma_shm(h) : gram_M(h), exact, out_path);
      return kOk;
    }
    if (*search) {
      const auto sols = enumerate(n, jobs);
      std::vector<SolutionRecord> recs;
      for (const auto& s : sols) recs.push_back({n, hex_encode(s.a()), hex_encode(s.b()), SymmetryType{0, false}, 0});
      if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) fail(ErrorKind::InvalidInput, "cannot open " + out_path);
        for (const auto& r : recs) out << format_record(r) << "\n";
      } else {
        for (const auto& r : recs) std::cout << format_record(r) << "\n";
      }
      (out_path.empty() ? std::cerr : std::cout) << sols.size() << " solutions\n";
      return sols.empty() ? kFalse : kOk;
    }
    if (*classify_cmd) {
      std::vector<SolutionRecord> recs;
      if (!in_path.empty()) {
        std::ifstream in(in_path);
        if (!in) fail(ErrorKind::InvalidInput, "cannot open " + in_path);
        std::vector<BlockSkewHadamard> sols;
        for (const auto& r : read_records(in)) {
          if (r.n != n) fail(ErrorKind::InvalidInput, "record for a different n");
          sols.push_back(r.solution());
        }
        recs = classify_solutions(n, sols, jobs);
      } else {
        recs = classify(n, jobs);
      }
      if (format == "records") {
        for (const auto& r : recs) std::cout << format_record(r) << "\n";
      } else {
        print_table(recs);
        std::cout << recs.size() << " classes\n";
      }
      return recs.empty() ? kFalse : kOk;
    }
    if (*equiv) return run_equiv(left, right);
    if (*minimize) {
      MinimizeConfig c;
      c.n = n;
      c.p = p;
      c.restarts = restarts;
      c.seed = seed;
      c.max_iterations = max_iter;
      c.jobs = jobs;
      c.flavor = strict ? DihedralFlavor::Strict : DihedralFlavor::Projective;
      const auto r = minimize_fiducial(c);
      std::cout.precision(17);
      std::cout << "value: " << r.value << "\nconverged: " << yes_no(r.converged) << "\nangle spread: " << r.angle_spread
                << "\ncoherence: " << r.coherence << "\nwelch bound: " << welch_bound(2 * n, n)
                << "\nbest restart: " << r.best_restart << "\nfiducial:";
      for (Eigen::Index k = 0; k < r.v.size(); ++k) std::cout << ' ' << format_complex(r.v[k]);
      std::cout << "\n";
      return r.converged ? kOk : kFalse;
    }
    if (*disc) {
      MinimizeConfig c;
      c.p = p;
      c.restarts = restarts;
      c.seed = seed;
      c.max_iterations = max_iter;
      c.jobs = jobs;
      const auto r = discover(n, c);
      if (!r.ok()) {
        std::cout << "failure: " << to_string(r.stage) << " (" << r.detail << ")\n";
        return kFalse;
      }
      std::cout << format_record(*r.record) << "\n";
      return kOk;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::ConstructionError ? kInternal : kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}
