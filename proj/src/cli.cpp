#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "rootcharts/errors.hpp"
#include "rootcharts/harness.hpp"
#include "rootcharts/numeric_roots.hpp"
#include "rootcharts/symfun.hpp"

namespace rc {

namespace {

constexpr int kOk = 0, kInput = 2, kEngine = 3, kVerify = 4;

struct Common {
  int order = 12;
  int max_depth = 24;
  double tol = -1;
  int samples = 200;
  unsigned long seed = 1;
  long precision = 256;
  std::string out;
  std::string format = "json";
};

void add_common(CLI::App* s, Common& c) {
  s->add_option("--order", c.order, "truncation order K")->check(CLI::Range(1, 64));
  s->add_option("--max-depth", c.max_depth, "recursion depth limit")->check(CLI::PositiveNumber);
  s->add_option("--tol", c.tol, "tolerance (cluster tolerance for desing, residual for verify)");
  s->add_option("--samples", c.samples, "sample count");
  s->add_option("--seed", c.seed, "random seed");
  s->add_option("--precision-bits", c.precision, "ball precision in bits")->check(CLI::Range(53L, 1L << 16));
  s->add_option("--out", c.out, "output file (default stdout)");
  s->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

DesingOptions desing_options(const Common& c) {
  DesingOptions o;
  o.K = c.order;
  o.max_depth = c.max_depth;
  if (c.tol > 0) o.cluster_tol = c.tol;
  o.precision = c.precision;
  return o;
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(c.out);
  if (!f) fail(ErrorKind::InvalidArgument, "cannot write '" + c.out + "'");
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

void emit(const Common& c, const json& j) { emit(c, j.dump(2)); }

void require_json(const Common& c, const char* what) {
  if (c.format != "json") fail(ErrorKind::InvalidArgument, std::string(what) + " output is JSON only");
}

mpq_class decimal_rational(const std::string& tok) {
  std::string t = tok;
  t.erase(std::remove_if(t.begin(), t.end(), ::isspace), t.end());
  if (t.empty()) fail(ErrorKind::Parse, "empty coordinate");
  auto dot = t.find('.');
  mpq_class v;
  if (dot == std::string::npos) {
    if (v.set_str(t, 10) != 0) fail(ErrorKind::Parse, "malformed coordinate '" + tok + "'");
  } else {
    std::string digits = t.substr(0, dot) + t.substr(dot + 1);
    std::string den = "1" + std::string(t.size() - dot - 1, '0');
    if (v.set_str(digits + "/" + den, 10) != 0) fail(ErrorKind::Parse, "malformed coordinate '" + tok + "'");
  }
  v.canonicalize();
  return v;
}

std::vector<mpq_class> parse_point(const std::string& s, int q) {
  std::vector<mpq_class> x;
  if (!s.empty()) {
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) x.push_back(decimal_rational(tok));
  } else {
    x.assign(static_cast<size_t>(q), mpq_class(0));
  }
  if (static_cast<int>(x.size()) != q) fail(ErrorKind::Parse, "point must have " + std::to_string(q) + " coordinates");
  return x;
}

Point to_doubles(const std::vector<mpq_class>& x) {
  Point p;
  for (const auto& v : x) p.push_back(v.get_num().get_d() / v.get_den().get_d());
  return p;
}

PolyFamily family_of(const ProblemInput& p) {
  return p.kind == ProblemKind::Polynomial ? p.poly : characteristic_family(p.matrix);
}

RootTree run_desing(const PolyFamily& P, const std::string& mode, const DesingOptions& o) {
  if (mode == "hyperbolic") return desingularize_hyperbolic(P, o);
  if (mode == "aj") return desingularize_aj(P, o);
  return desingularize(P, o);
}

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

size_t count_powersubs(const RootTree& t) {
  size_t k = 0;
  for (const auto& s : t.steps) k += std::holds_alternative<PowerSub>(s);
  for (const auto& c : t.children) k += count_powersubs(c);
  return k;
}

struct ExampleResult {
  std::string name;
  bool ok = true;
  std::vector<std::string> detail;
};

ExampleResult run_example(const std::string& path, const Common& c) {
  ExampleResult r;
  r.name = std::filesystem::path(path).stem().string();
  auto check = [&r](bool cond, const std::string& what) {
    r.detail.push_back(what + (cond ? " ok" : " FAILED"));
    r.ok = r.ok && cond;
  };
  ProblemInput p = read_problem(path);
  if (!p.name.empty()) r.name = p.name;
  const json& e = p.expect;
  DesingOptions o = desing_options(c);
  o.K = p.options.value("order", o.K);
  std::string mode = p.options.value("mode", "general");
  std::string expected_error = e.value("error", "");
  try {
    if (p.kind == ProblemKind::Matrix) {
      if (e.contains("normal")) check(normality_check(p.matrix).normal == e["normal"].get<bool>(), "normal");
      auto T = eigen_desingularize(p.matrix, o);
      if (e.contains("certified")) check(certify_eigen_tree(p.matrix, T) == 0, "certified");
      if (e.contains("min_leaves")) check(leaves(T, p.q).size() >= e["min_leaves"].get<size_t>(), "min_leaves");
    } else {
      const PolyFamily& P = p.poly;
      if (e.contains("hyperbolic")) {
        auto a = P.at_origin();
        check(hyperbolicity_test(a).hyperbolic == e["hyperbolic"].get<bool>(), "hyperbolic");
      }
      if (e.contains("global_mismatch_max")) {
        auto g = curve_roots_global(P, Scalar(decimal_rational(p.options.value("lo", "-1/2"))),
                                    Scalar(decimal_rational(p.options.value("hi", "1/2"))), 4, o);
        check(g.mismatch <= e["global_mismatch_max"].get<double>(), "global_mismatch");
      }
      bool needs_tree = e.contains("certified") || e.contains("powersub_steps") || e.contains("verify") ||
                        e.contains("min_leaves") || !expected_error.empty();
      if (needs_tree) {
        auto T = run_desing(P, mode, o);
        if (e.contains("certified")) check(certify_tree(P, T) == 0, "certified");
        if (e.contains("powersub_steps"))
          check(count_powersubs(T) == e["powersub_steps"].get<size_t>(), "powersub_steps");
        if (e.contains("min_leaves")) check(leaves(T, p.q).size() >= e["min_leaves"].get<size_t>(), "min_leaves");
        if (e.contains("verify")) {
          VerifyOptions vo;
          vo.samples = p.options.value("samples", c.samples);
          vo.seed = c.seed;
          auto rep = verify_roots(P, T, vo);
          check(rep.pass == e["verify"].get<bool>(), "verify");
        }
      }
    }
    if (!expected_error.empty()) check(false, "expected " + expected_error);
  } catch (const Error& err) {
    if (!expected_error.empty() && expected_error == error_name(err.kind())) {
      check(true, "error " + expected_error);
    } else {
      check(false, err.what());
    }
  }
  return r;
}

int cmd_examples(const Common& c, const std::string& dir) {
  if (!std::filesystem::is_directory(dir)) fail(ErrorKind::InvalidArgument, "no corpus directory '" + dir + "'");
  std::vector<std::string> files;
  for (const auto& f : std::filesystem::directory_iterator(dir))
    if (f.path().extension() == ".json") files.push_back(f.path().string());
  std::sort(files.begin(), files.end());
  if (files.empty()) fail(ErrorKind::InvalidArgument, "corpus is empty");
  bool all = true;
  json out = json::array();
  std::ostringstream csv;
  csv << "example,ok,detail\n";
  for (const auto& f : files) {
    auto r = run_example(f, c);
    all = all && r.ok;
    std::string d;
    for (const auto& s : r.detail) d += (d.empty() ? "" : "; ") + s;
    std::cerr << (r.ok ? "ok   " : "FAIL ") << r.name << ": " << d << '\n';
    out.push_back({{"example", r.name}, {"ok", r.ok}, {"detail", r.detail}});
    csv << r.name << ',' << (r.ok ? "true" : "false") << ",\"" << d << "\"\n";
  }
  if (c.format == "csv") emit(c, csv.str());
  else emit(c, json{{"format_version", 1}, {"kind", "examples"}, {"all_ok", all}, {"examples", out}});
  return all ? kOk : kVerify;
}

int cmd_verify(const Common& c, const std::string& file, const std::string& mode, double radius, double fraction) {
  if (c.samples <= 0) fail(ErrorKind::InvalidArgument, "--samples must be positive");
  ProblemInput p = read_problem(file);
  PolyFamily P = family_of(p);
  auto T = run_desing(P, mode, desing_options(c));
  VerifyOptions vo;
  vo.samples = c.samples;
  vo.seed = c.seed;
  if (c.tol > 0) vo.tol = c.tol;
  vo.coverage_radius = radius;
  vo.leaf_fraction = fraction;
  auto rep = verify_roots(P, T, vo);
  if (c.format == "csv") {
    std::ostringstream os;
    os.precision(17);
    os << "leaf,samples,max_residual,max_match,soundness\n";
    for (const auto& l : rep.leaves)
      os << l.leaf << ',' << l.samples << ',' << l.max_residual << ',' << l.max_match << ','
         << (l.soundness == Soundness::Exact ? "exact" : "numeric") << '\n';
    os << "coverage,," << rep.coverage << ",,\n";
    emit(c, os.str());
  } else {
    emit(c, verification_to_json(rep));
  }
  return rep.pass ? kOk : kVerify;
}

struct RegArgs {
  std::string stat = "sbv";
  double p = 2;
  double h = 1.0 / 64;
  int levels = 3;
  int root = 0;
  double box = 0.5;
  std::string at;
  std::string mode = "general";
};

int cmd_regularity(const Common& c, const std::string& file, const RegArgs& a) {
  ProblemInput pin = read_problem(file);
  PolyFamily P = family_of(pin);
  if (a.root < 0 || a.root >= P.n) fail(ErrorKind::InvalidArgument, "--root out of range");
  if (a.p < 1) fail(ErrorKind::InvalidArgument, "--p must be at least 1");
  if (!(a.h > 0) || !(a.box > 0)) fail(ErrorKind::InvalidArgument, "--spacing and --box must be positive");
  if (a.levels < 1 || a.levels > 8) fail(ErrorKind::InvalidArgument, "--levels must lie in 1..8");
  GridSpec g;
  g.box = Box::cube(P.q, a.box);
  g.h = a.h;
  Point x0 = to_doubles(parse_point(a.at, P.q));

  if (a.stat == "holder") {
    std::vector<cplx> xc(x0.begin(), x0.end());
    if (c.samples < 1) fail(ErrorKind::InvalidArgument, "--samples must be positive");
    auto fit = holder_probe(holder_ensemble(P.eval_coeffs(xc), c.samples, c.seed), P.n);
    json j = {{"format_version", 1}, {"kind", "holder"}, {"n", P.n},      {"slope", fit.slope},
              {"constant", fit.intercept}, {"used", fit.used}, {"enough", fit.enough}, {"pass", fit.pass}};
    if (c.format == "csv") {
      std::ostringstream os;
      os << "n,slope,constant,used,pass\n" << P.n << ',' << fit.slope << ',' << fit.intercept << ',' << fit.used << ','
         << (fit.pass ? "true" : "false") << '\n';
      emit(c, os.str());
    } else {
      emit(c, j);
    }
    return kOk;
  }

  auto T = run_desing(P, a.mode, desing_options(c));
  auto sel = tree_selection(P, T, g.box);
  g.marks = sel.locus;
  Sampler f = sampler_of(sel, a.root);

  if (a.stat == "sbv") {
    auto r = sbv_report(sel, a.root, g, a.levels);
    if (c.format == "csv") emit(c, report_csv(r));
    else emit(c, regularity_to_json(r));
    return kOk;
  }
  if (a.stat == "l1" || a.stat == "lp") {
    GradOptions o;
    o.p = a.stat == "l1" ? 1.0 : a.p;
    o.levels = a.levels;
    auto est = grad_lp_estimate(f, g, o);
    RegularityReport r;
    r.l1 = est;
    json lv = regularity_to_json(r)["l1"];
    if (c.format == "csv") {
      std::ostringstream os;
      os.precision(17);
      os << "stat,p,level,h,value,e_measure,jump_mass\n";
      for (size_t k = 0; k < est.size(); ++k)
        os << a.stat << ',' << o.p << ',' << k << ',' << est[k].h << ',' << est[k].value << ',' << est[k].e_measure
           << ',' << est[k].jump_mass << '\n';
      emit(c, os.str());
    } else {
      emit(c, json{{"format_version", 1}, {"kind", "grad_lp"}, {"p", o.p}, {"levels", lv}});
    }
    return kOk;
  }
  // bmo / vmo: squares about x0 of shrinking size.
  Field fv = [&f](const Point& x) { return f(x).value; };
  std::vector<double> halves, mos;
  for (int k = 2; k < 2 + std::max(a.levels, 3) + 2; ++k) {
    double half = a.box * std::ldexp(1.0, -k);
    SquareCube Q{x0, half};
    for (size_t i = 0; i < x0.size(); ++i) Q.center[i] = std::clamp(x0[i], -a.box + half, a.box - half);
    halves.push_back(half);
    mos.push_back(mean_oscillation(fv, Q, 32));
  }
  double sup = *std::max_element(mos.begin(), mos.end());
  bool vanishing = mos.back() <= 0.25 * mos.front() || mos.front() < 1e-3;
  if (c.format == "csv") {
    std::ostringstream os;
    os.precision(17);
    os << "stat,half,mo\n";
    for (size_t k = 0; k < mos.size(); ++k) os << a.stat << ',' << halves[k] << ',' << mos[k] << '\n';
    emit(c, os.str());
  } else {
    json rows = json::array();
    for (size_t k = 0; k < mos.size(); ++k) rows.push_back({{"half", halves[k]}, {"mo", mos[k]}});
    json j = {{"format_version", 1}, {"kind", a.stat}, {"table", rows}};
    if (a.stat == "bmo") j["sup"] = sup;
    else j["vanishing"] = vanishing;
    emit(c, j);
  }
  return kOk;
}

}  // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{"Chart-tree desingularization of polynomial roots and normal matrix eigenvalues"};
  app.require_subcommand(1);
  Common c;
  std::string file, mode = "general", at, corpus = "corpus";
  double radius = 0.05, fraction = 0.05;
  RegArgs ra;

  auto* desing = app.add_subcommand("desing", "chart tree of a polynomial family");
  desing->add_option("file", file, "problem JSON")->required();
  desing->add_option("--mode", mode, "general, hyperbolic or aj")->check(CLI::IsMember({"general", "hyperbolic", "aj"}));
  add_common(desing, c);

  auto* eigen = app.add_subcommand("eigen", "eigenvalue and eigenvector tree of a normal matrix family");
  eigen->add_option("file", file)->required();
  add_common(eigen, c);

  auto* hyp = app.add_subcommand("hyperbolic-test", "Sylvester test of P at a point");
  hyp->add_option("file", file)->required();
  hyp->add_option("--at", at, "comma separated rational or decimal coordinates (default origin)");
  add_common(hyp, c);

  auto* roots = app.add_subcommand("roots", "roots at a point from the chart tree");
  roots->add_option("file", file)->required();
  roots->add_option("--at", at)->required();
  roots->add_option("--mode", mode)->check(CLI::IsMember({"general", "hyperbolic", "aj"}));
  add_common(roots, c);

  auto* verify = app.add_subcommand("verify", "sample a chart tree against the numeric oracle");
  verify->add_option("file", file)->required();
  verify->add_option("--mode", mode)->check(CLI::IsMember({"general", "hyperbolic", "aj"}));
  verify->add_option("--radius", radius, "coverage cube radius about the seed");
  verify->add_option("--leaf-fraction", fraction, "leaf sampling box as a fraction of the leaf box");
  add_common(verify, c);

  auto* reg = app.add_subcommand("regularity", "numerical regularity diagnostics");
  reg->add_option("file", file)->required();
  reg->add_option("--stat", ra.stat)->check(CLI::IsMember({"l1", "lp", "bmo", "vmo", "sbv", "holder"}));
  reg->add_option("--p", ra.p, "exponent for --stat lp");
  reg->add_option("--spacing", ra.h, "coarsest grid spacing");
  reg->add_option("--levels", ra.levels, "refinement levels");
  reg->add_option("--root", ra.root, "root index of the selection");
  reg->add_option("--box", ra.box, "half width of the parameter cube");
  reg->add_option("--at", ra.at, "centre point for bmo, vmo and holder");
  reg->add_option("--mode", ra.mode)->check(CLI::IsMember({"general", "hyperbolic", "aj"}));
  add_common(reg, c);

  auto* ex = app.add_subcommand("examples", "run the bundled example corpus against its annotations");
  ex->add_option("--corpus", corpus, "corpus directory");
  add_common(ex, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    if (*desing) {
      require_json(c, "desing");
      ProblemInput p = read_problem(file);
      PolyFamily P = family_of(p);
      auto T = run_desing(P, mode, desing_options(c));
      size_t bad = certify_tree(P, T);
      emit(c, tree_to_json(T, P.q));
      return bad == 0 ? kOk : kVerify;
    }
    if (*eigen) {
      require_json(c, "eigen");
      ProblemInput p = read_problem(file);
      if (p.kind != ProblemKind::Matrix) fail(ErrorKind::InvalidArgument, "eigen needs a matrix_family");
      auto T = eigen_desingularize(p.matrix, desing_options(c));
      size_t bad = certify_eigen_tree(p.matrix, T);
      emit(c, eigen_tree_to_json(T, p.q));
      return bad == 0 ? kOk : kVerify;
    }
    if (*hyp) {
      ProblemInput p = read_problem(file);
      PolyFamily P = family_of(p);
      auto x = parse_point(at, P.q);
      std::vector<Scalar> xs;
      for (const auto& v : x) xs.push_back(Scalar(v));
      std::vector<Scalar> a;
      for (const auto& f : P.a) a.push_back(f.eval(xs));
      auto h = hyperbolicity_test(a);
      if (c.format == "csv") {
        std::ostringstream os;
        os << "hyperbolic,distinct,distinct_real\n"
           << (h.hyperbolic ? "true" : "false") << ',' << h.distinct << ',' << h.distinct_real << '\n';
        emit(c, os.str());
      } else {
        emit(c, json{{"hyperbolic", h.hyperbolic}, {"distinct", h.distinct}, {"distinct_real", h.distinct_real}});
      }
      return kOk;
    }
    if (*roots) {
      ProblemInput p = read_problem(file);
      PolyFamily P = family_of(p);
      Point x = to_doubles(parse_point(at, P.q));
      auto T = run_desing(P, mode, desing_options(c));
      auto sel = tree_selection(P, T, Box::cube(P.q, 1.0));
      auto v = sel.eval(x);
      std::vector<cplx> xc(x.begin(), x.end());
      auto num = numeric_roots(P.eval_coeffs(xc));
      if (c.format == "csv") {
        std::ostringstream os;
        os.precision(17);
        os << "index,re,im,chart\n";
        for (size_t i = 0; i < v.values.size(); ++i)
          os << i << ',' << v.values[i].real() << ',' << v.values[i].imag() << ',' << v.id << '\n';
        emit(c, os.str());
      } else {
        json rs = json::array(), ns = json::array();
        for (auto z : v.values) rs.push_back(cplx_json(z));
        for (auto z : num) ns.push_back(cplx_json(z));
        emit(c, json{{"format_version", 1}, {"point", x}, {"chart", v.id}, {"roots", rs}, {"numeric", ns},
                     {"distance", matching_distance(v.values, num)}});
      }
      return kOk;
    }
    if (*verify) return cmd_verify(c, file, mode, radius, fraction);
    if (*reg) return cmd_regularity(c, file, ra);
    if (*ex) return cmd_examples(c, corpus);
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    switch (e.kind()) {
      case ErrorKind::Parse:
      case ErrorKind::InvalidArgument:
      case ErrorKind::DimensionMismatch:
      case ErrorKind::UnsupportedDimension:
      case ErrorKind::NonReal:
        return kInput;
      default:
        return kEngine;
    }
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return kEngine;
  }
  return kInput;
}

}  // namespace rc
