#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "toda/json_io.hpp"
#include "toda/suite.hpp"

using namespace toda;

namespace {

[[noreturn]] void usage_error(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  std::exit(2);
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  return out;
}

Interval parse_interval(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos) usage_error("interval must be 'lo,hi' with inf/-inf allowed");
  std::string lo = s.substr(0, comma), hi = s.substr(comma + 1);
  std::optional<long> l, h;
  if (lo != "-inf") l = std::stol(lo);
  if (hi != "inf" && hi != "+inf") h = std::stol(hi);
  if (l && h) return Interval::finite(*l, *h);
  if (l) return Interval::from(*l);
  if (h) return Interval::upto(*h);
  return Interval::whole();
}

// corners spec: "pos:a1,a2;pos:a1,a2" with integer or symbolic angle entries
CornerProfile parse_corners(const std::string& s, int rank) {
  std::vector<std::pair<long, AngleVec>> corners;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ';')) {
    auto colon = part.find(':');
    if (colon == std::string::npos) usage_error("corner must be 'pos:angles'");
    long pos = std::stol(part.substr(0, colon));
    AngleVec nu;
    std::stringstream as(part.substr(colon + 1));
    std::string a;
    while (std::getline(as, a, ',')) {
      if (!a.empty() && (std::isdigit(a[0]) || a[0] == '-'))
        nu.push_back(LinExp(std::stol(a)));
      else
        nu.push_back(LinExp::symbolic(a));
    }
    if (static_cast<int>(nu.size()) != rank) usage_error("angle vector length must match the rank");
    corners.emplace_back(pos, std::move(nu));
  }
  return CornerProfile(std::move(corners));
}

std::vector<std::vector<int>> read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) usage_error("cannot open matrix file " + path);
  int l;
  if (!(in >> l) || l <= 0) usage_error("matrix file must start with the rank");
  std::vector<std::vector<int>> C(l, std::vector<int>(l));
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j)
      if (!(in >> C[i][j])) usage_error("matrix file truncated");
  return C;
}

struct CartanSpec {
  std::optional<CartanData> cd;

  static CartanSpec parse(const std::string& type, const std::string& matrix_file) {
    CartanSpec spec;
    if (!matrix_file.empty()) {
      spec.cd = build_custom(read_matrix_file(matrix_file));
    } else if (!type.empty()) {
      if (type.size() < 2) usage_error("type must look like A2, B2, C3, D4");
      spec.cd = build_cartan(lie_kind_from_char(type[0]), std::stoi(type.substr(1)));
    }
    return spec;
  }
  const CartanData& get() const {
    if (!cd) usage_error("a --type or --matrix is required");
    return *cd;
  }
};

void emit(const Json& j, const std::string& out_file) {
  if (out_file.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream out(out_file);
    out << j.dump(2) << "\n";
  }
}

void emit_text(const std::string& text, const std::string& out_file) {
  if (out_file.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_file);
    out << text;
  }
}

AngleVec symbolic_angles(int rank) {
  AngleVec nu;
  for (int i = 0; i < rank; ++i)
    nu.push_back(LinExp::symbolic(rank == 1 ? "nu" : "nu" + std::to_string(i + 1)));
  return nu;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact fermionic sums, Whittaker scalar products and difference Toda checks"};
  app.require_subcommand(1);

  std::string type, matrix_file, out_file, output = "json";
  std::string sum = "I", interval_s = "0,inf", corners_s, m_s, beta_s, id;
  std::string lam1_s, lam2_s;
  long k = 0, r = 0, s = 0;
  int degree = 3, n_arg = 0;
  long gamma = 0;
  bool cartan_denoms = false, probabilistic = false, negative_control = false;
  std::uint64_t seed = 0x5eed;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--type", type, "classical type, e.g. A1, A2, B2, C3, D4");
    cmd->add_option("--matrix", matrix_file, "custom symmetric matrix file (rank, then rows)");
    cmd->add_option("--output", output, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", out_file, "write to a file instead of stdout");
  };

  CLI::App* eval = app.add_subcommand("eval", "evaluate a sum exactly");
  add_common(eval);
  eval->add_option("--sum", sum, "I, X, J or qbinom")->check(CLI::IsMember({"I", "X", "J", "qbinom"}));
  eval->add_option("--m", m_s, "color marginals, e.g. 2 or 1,1");
  eval->add_option("--beta", beta_s, "root element for J, e.g. 1,1");
  eval->add_option("--interval", interval_s, "e.g. 0,inf or -inf,3 or 0,5 or -inf,inf");
  eval->add_option("--corners", corners_s, "profile, e.g. '0:nu' or '0:1,0;2:0,1'");
  eval->add_flag("--cartan-denoms", cartan_denoms, "use the (q_i; q_i) denominator variant");
  eval->add_option("--gamma", gamma, "q-binomial top argument (integer)");
  eval->add_option("--n", n_arg, "q-binomial bottom argument");

  CLI::App* verify = app.add_subcommand("verify", "verify one identity and emit the report");
  add_common(verify);
  verify->add_option("--id", id, "identity name")->required();
  verify->add_option("--m", m_s, "color marginals");
  verify->add_option("--beta", beta_s, "root element");
  verify->add_option("--k", k, "integer parameter k");
  verify->add_option("--r", r, "interval end r");
  verify->add_option("--s", s, "interval end s");
  verify->add_option("--corners", corners_s, "corner positions for mc24, e.g. 0,0,1");
  verify->add_option("--degree", degree, "series degree bound");
  verify->add_option("--lam1", lam1_s, "explicit weight over omega, e.g. -2,-1");
  verify->add_option("--lam2", lam2_s, "explicit weight over omega");
  verify->add_flag("--probabilistic", probabilistic, "compare with seeded random evaluation");
  verify->add_option("--seed", seed, "seed for probabilistic equality");

  CLI::App* series = app.add_subcommand("series", "emit the eigenfunction series F");
  add_common(series);
  series->add_option("--degree", degree, "total-degree truncation")->required();

  CLI::App* suite = app.add_subcommand("suite", "run the verification suites");
  std::string level = "smoke";
  suite->add_option("--level", level, "smoke or full")->check(CLI::IsMember({"smoke", "full"}));
  suite->add_flag("--negative-control", negative_control,
                  "include a deliberately corrupted fixture (must fail)");
  suite->add_option("--out", out_file, "also write the reports as JSON");

  CLI11_PARSE(app, argc, argv);

  try {
    if (eval->parsed()) {
      const int threads_unused [[maybe_unused]] = env_thread_cap();
      if (sum == "qbinom") {
        RationalFn v = qbinom(gamma, n_arg);
        if (output == "csv")
          emit_text(to_csv(v), out_file);
        else
          emit(to_json(v), out_file);
        return 0;
      }
      CartanSpec spec = CartanSpec::parse(type, matrix_file);
      const CartanData& cd = spec.get();
      if (sum == "J") {
        if (!cd.is_classical()) usage_error("J needs a classical type");
        if (beta_s.empty()) usage_error("--beta required for J");
        JContext ctx(cd);
        RootElement beta(parse_int_list(beta_s));
        Interval iv = parse_interval(interval_s);
        RationalFn v = ctx.J_interval(beta, ShiftedWeight::lambda(cd), iv);
        if (output == "csv")
          emit_text(to_csv(v), out_file);
        else
          emit(to_json(v), out_file);
        return 0;
      }
      if (m_s.empty()) usage_error("--m required");
      RootElement m(parse_int_list(m_s));
      if (m.rank() != cd.rank) usage_error("--m length must match the rank");
      QuadForm form = cartan_denoms ? QuadForm::from_cartan(cd) : QuadForm::bare(cd.C);
      Fermionic f(std::move(form));
      CornerProfile prof =
          corners_s.empty() ? CornerProfile::zero() : parse_corners(corners_s, cd.rank);
      RationalFn v = sum == "X" ? f.X(prof, m) : f.I(prof, m, parse_interval(interval_s));
      if (output == "csv")
        emit_text(to_csv(v), out_file);
      else
        emit(to_json(v), out_file);
      return 0;
    }

    if (verify->parsed()) {
      static const std::set<std::string> fermionic_ids = {"ex1",  "ex2",  "quasi", "rs0",
                                                          "rs1",  "jjx",  "jjx0",  "jjxm1",
                                                          "xxx",  "two_corner", "mc24", "mc24_display"};
      static const std::set<std::string> sl2_ids = {"sl2I", "sl2X0", "prop3a", "prop3b"};
      static const std::set<std::string> whittaker_ids = {"id1",  "id2",  "id3",  "id4",
                                                          "kminus1", "k0", "J0k", "Xsym",
                                                          "Xqinv", "Jqinv", "Jz0"};
      Report rep;
      if (fermionic_ids.count(id)) {
        CartanSpec spec = CartanSpec::parse(type.empty() && matrix_file.empty() ? "A1" : type,
                                            matrix_file);
        const CartanData& cd = spec.get();
        Fermionic f(QuadForm::bare(cd.C));
        DecompParams p;
        p.m = m_s.empty() ? RootElement(std::vector<int>(cd.rank, 1)) : RootElement(parse_int_list(m_s));
        p.k = k;
        p.r = r;
        p.s = s;
        p.nu1 = symbolic_angles(cd.rank);
        AngleVec second;
        for (int i = 0; i < cd.rank; ++i)
          second.push_back(LinExp::symbolic(cd.rank == 1 ? "xi" : "xi" + std::to_string(i + 1)));
        p.nu2 = std::move(second);
        if (!corners_s.empty())
          for (int v : parse_int_list(corners_s)) p.corner_positions.push_back(v);
        rep = check_decomposition(f, id, p);
      } else if (sl2_ids.count(id)) {
        int m = m_s.empty() ? 2 : parse_int_list(m_s)[0];
        Sl2Closed kind = id == "sl2I"      ? Sl2Closed::I
                         : id == "sl2X0"   ? Sl2Closed::X0
                         : id == "prop3a" ? Sl2Closed::prop3a
                                           : Sl2Closed::prop3b;
        rep = sl2_closed(kind, m).second;
      } else if (whittaker_ids.count(id)) {
        CartanSpec spec = CartanSpec::parse(type, matrix_file);
        JContext ctx(spec.get());
        if (beta_s.empty()) usage_error("--beta required");
        rep = verify_identity(ctx, id, RootElement(parse_int_list(beta_s)), k);
      } else if (id == "vanish") {
        CartanSpec spec = CartanSpec::parse(type, matrix_file);
        JContext ctx(spec.get());
        if (beta_s.empty() || lam1_s.empty() || lam2_s.empty())
          usage_error("--beta, --lam1, --lam2 required");
        auto wt = [&](const std::string& sstr) {
          std::vector<Rational> v;
          for (int x : parse_int_list(sstr)) v.emplace_back(x);
          return WeightExpr::integral(std::move(v));
        };
        VanishingReport v =
            check_vanishing(ctx, RootElement(parse_int_list(beta_s)), wt(lam1_s), wt(lam2_s));
        Json j;
        j["identity"] = "vanish";
        j["params"] = v.params;
        j["hypotheses_ok"] = v.hypotheses_ok;
        j["predicted_zero"] = v.predicted_zero;
        j["observed_zero"] = v.observed_zero;
        j["holds"] = v.holds;
        j["value"] = to_json(v.value);
        j["runtime_ms"] = v.runtime_ms;
        emit(j, out_file);
        return v.holds ? 0 : 1;
      } else if (id == "toda") {
        CartanSpec spec = CartanSpec::parse(type, matrix_file);
        if (beta_s.empty()) usage_error("--beta required");
        rep = verify_toda_recursion(spec.get().kind, spec.get().rank, RootElement(parse_int_list(beta_s)));
      } else if (id == "eigen") {
        CartanSpec spec = CartanSpec::parse(type, matrix_file);
        JContext ctx(spec.get());
        rep = eigen_check_A(ctx, degree);
      } else if (id == "appendixA") {
        CartanSpec spec = CartanSpec::parse(type, matrix_file);
        auto reports = verify_appendixA(spec.get().rank, degree);
        Json arr = Json::array();
        bool all = true;
        for (const auto& rr : reports) {
          arr.push_back(to_json(rr));
          all = all && rr.holds;
        }
        emit(arr, out_file);
        return all ? 0 : 1;
      } else {
        usage_error("unsupported identity name " + id);
      }
      if (probabilistic && !(rep.lhs.is_zero() && rep.rhs.is_zero())) {
        rep.holds =
            rf_equal_detail(rep.lhs, rep.rhs, EqualityMode::probabilistic, seed) == EqualityResult::equal;
      }
      emit(to_json(rep), out_file);
      return rep.holds ? 0 : 1;
    }

    if (series->parsed()) {
      CartanSpec spec = CartanSpec::parse(type, matrix_file);
      JContext ctx(spec.get());
      YSeries f = build_F(ctx, degree);
      if (output == "csv")
        emit_text(to_csv(f), out_file);
      else
        emit(to_json(f), out_file);
      return 0;
    }

    if (suite->parsed()) {
      int threads = env_thread_cap();
      bool all_pass = true;
      Json jreports = Json::array();
      if (level == "smoke") {
        for (const auto& rep : run_smoke(negative_control, threads)) {
          if (rep.asserted && !rep.holds) all_pass = false;
          std::cout << (rep.asserted ? (rep.holds ? "PASS " : "FAIL ") : "INFO ") << rep.identity
                    << " (" << rep.params << ")";
          if (!rep.holds) std::cout << " [does not hold]";
          std::cout << "\n";
          jreports.push_back(to_json(rep));
        }
      } else {
        for (const auto& c : run_acceptance(threads)) {
          std::cout << (c.pass ? "PASS" : "FAIL") << " criterion " << c.number << ": " << c.label
                    << " (" << c.seconds << "s < " << c.limit_seconds << "s)";
          if (!c.detail.empty()) std::cout << " -- " << c.detail;
          std::cout << "\n";
          if (!c.pass) all_pass = false;
          Json j;
          j["criterion"] = c.number;
          j["label"] = c.label;
          j["pass"] = c.pass;
          j["seconds"] = c.seconds;
          jreports.push_back(std::move(j));
        }
      }
      if (!out_file.empty()) emit(jreports, out_file);
      std::cout << (all_pass ? "all checks passed" : "FAILURES present") << "\n";
      return all_pass ? 0 : 1;
    }
  } catch (const PoleError& e) {
    std::cerr << "pole error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
