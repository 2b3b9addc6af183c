#include <cmath>
#include <fstream>
#include <limits>

#include "rootcharts/errors.hpp"
#include "rootcharts/harness.hpp"

namespace rc {

namespace {

[[noreturn]] void bad(const std::string& what) { fail(ErrorKind::Parse, what); }

mpq_class rational_from(const std::string& s) {
  if (s.empty()) bad("empty rational");
  mpq_class v;
  if (v.set_str(s, 10) != 0) bad("malformed rational '" + s + "'");
  if (v.get_den() == 0) bad("zero denominator in '" + s + "'");
  v.canonicalize();
  return v;
}

mpq_class rational_from(const json& j) {
  if (j.is_number_integer()) return mpq_class(j.get<long>());
  if (j.is_string()) return rational_from(j.get<std::string>());
  bad("expected an integer or a \"p/q\" string, got " + j.dump());
}

json double_to_json(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
}

double double_from(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  bad("expected a number, got " + j.dump());
}

Exponent exponent_from(const json& j, int q) {
  if (!j.is_array() || static_cast<int>(j.size()) != q) bad("exponent must have length " + std::to_string(q));
  std::vector<int> e;
  for (const auto& v : j) {
    if (!v.is_number_integer() || v.get<int>() < 0) bad("exponents are nonnegative integers");
    e.push_back(v.get<int>());
  }
  return Exponent(e);
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

Box box_from(const json& j) {
  Box b;
  for (const auto& v : field(j, "center")) b.center.push_back(double_from(v));
  for (const auto& v : field(j, "radius")) b.radius.push_back(double_from(v));
  if (b.center.size() != b.radius.size()) bad("box center and radius differ in length");
  return b;
}

json box_to_json(const Box& b) {
  json c = json::array(), r = json::array();
  for (double v : b.center) c.push_back(double_to_json(v));
  for (double v : b.radius) r.push_back(double_to_json(v));
  return {{"center", c}, {"radius", r}};
}

json log_to_json(const NodeLog& l) {
  json j = json::object();
  if (l.multiplicity >= 0) j["multiplicity"] = l.multiplicity;
  if (l.group_order >= 0) j["group_order"] = l.group_order;
  if (!l.notes.empty()) j["notes"] = l.notes;
  return j;
}

NodeLog log_from(const json& j) {
  NodeLog l;
  if (j.contains("multiplicity")) l.multiplicity = j["multiplicity"].get<int>();
  if (j.contains("group_order")) l.group_order = j["group_order"].get<long>();
  if (j.contains("notes")) l.notes = j["notes"].get<std::vector<std::string>>();
  return l;
}

const char* soundness_name(Soundness s) { return s == Soundness::Exact ? "exact" : "numeric"; }

template <class P>
json node_to_json(const TreeNode<P>& t, const std::function<json(const P&)>& leaf) {
  json j;
  json steps = json::array();
  for (const auto& s : t.steps) steps.push_back(step_to_json(s));
  j["steps"] = steps;
  j["log"] = log_to_json(t.log);
  if (t.leaf) j["leaf"] = leaf(*t.leaf);
  json ch = json::array();
  for (const auto& c : t.children) ch.push_back(node_to_json(c, leaf));
  j["children"] = ch;
  return j;
}

std::vector<Jet> jets_from(const json& j, int q) {
  std::vector<Jet> out;
  for (const auto& v : j) out.push_back(jet_from_json(v, q));
  return out;
}

json jets_to_json(const std::vector<Jet>& v) {
  json a = json::array();
  for (const auto& f : v) a.push_back(jet_to_json(f));
  return a;
}

RootTree root_node_from(const json& j, int q) {
  RootTree t;
  for (const auto& s : field(j, "steps")) t.steps.push_back(step_from_json(s, q));
  if (j.contains("log")) t.log = log_from(j["log"]);
  if (j.contains("leaf")) {
    const auto& l = j["leaf"];
    RootChart c;
    c.roots = jets_from(field(l, "roots"), q);
    c.soundness = l.value("soundness", "exact") == "exact" ? Soundness::Exact : Soundness::Numeric;
    c.certified = l.value("certified", false);
    if (l.contains("shift_ledger")) c.shift_ledger = l["shift_ledger"].get<std::vector<std::string>>();
    t.leaf = std::move(c);
  }
  if (j.contains("children"))
    for (const auto& c : j["children"]) t.children.push_back(root_node_from(c, q));
  return t;
}

}  // namespace

Scalar scalar_from_json(const json& j) {
  if (j.is_object()) {
    if (j.contains("ball")) {
      const auto& b = j["ball"];
      long prec = b.value("precision", 256L);
      BigFloat re(prec), im(prec);
      if (mpfr_set_str(re.get(), field(b, "re").get<std::string>().c_str(), 10, MPFR_RNDN) != 0 ||
          mpfr_set_str(im.get(), field(b, "im").get<std::string>().c_str(), 10, MPFR_RNDN) != 0)
        bad("malformed ball midpoint");
      return Scalar::ball(re, im, double_from(field(b, "rad")));
    }
    mpq_class re = j.contains("re") ? rational_from(j["re"]) : mpq_class(0);
    mpq_class im = j.contains("im") ? rational_from(j["im"]) : mpq_class(0);
    return Scalar(re, im);
  }
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (!s.empty() && s.back() == 'i') {
      std::string c = s.substr(0, s.size() - 1);
      if (!c.empty() && c.back() == '*') c.pop_back();
      if (c.empty() || c == "+") return Scalar(mpq_class(0), mpq_class(1));
      if (c == "-") return Scalar(mpq_class(0), mpq_class(-1));
      return Scalar(mpq_class(0), rational_from(c));
    }
  }
  return Scalar(rational_from(j));
}

json scalar_to_json(const Scalar& s) {
  if (!s.is_exact()) {
    const auto& b = s.as_ball();
    int digits = 2 + static_cast<int>(std::ceil(static_cast<double>(b.re.prec()) * 0.30103));
    return {{"ball",
             {{"re", b.re.str(digits)}, {"im", b.im.str(digits)}, {"rad", double_to_json(b.rad)}, {"precision", b.re.prec()}}}};
  }
  const auto& g = s.exact();
  if (g.im == 0) return g.re.get_str();
  return {{"re", g.re.get_str()}, {"im", g.im.get_str()}};
}

Jet jet_from_json(const json& j, int q) {
  MultiPoly p(q);
  const json& terms = j.is_array() ? j : field(j, "terms");
  for (const auto& t : terms) p.add_term(exponent_from(field(t, "e"), q), scalar_from_json(field(t, "c")));
  PrecisionIdeal I(q);
  if (j.is_object() && j.contains("ideal")) {
    std::vector<Exponent> gens;
    for (const auto& g : j["ideal"]) gens.push_back(exponent_from(g, q));
    I = PrecisionIdeal::from(q, gens);
  }
  return Jet(p, I);
}

json jet_to_json(const Jet& f) {
  json terms = json::array();
  for (const auto& [e, c] : f.poly().terms()) terms.push_back({{"c", scalar_to_json(c)}, {"e", e.data()}});
  json j = {{"terms", terms}};
  if (!f.ideal().is_zero()) {
    json gens = json::array();
    for (const auto& g : f.ideal().gens()) gens.push_back(g.data());
    j["ideal"] = gens;
  }
  return j;
}

json step_to_json(const ChartStep& s) {
  if (auto b = std::get_if<BlowUp>(&s)) return {{"type", "blowup"}, {"center", b->center}, {"chart", b->chart}};
  if (auto p = std::get_if<PowerSub>(&s)) return {{"type", "powersub"}, {"gamma", p->gamma.data()}, {"eps", p->eps}};
  if (auto t = std::get_if<Translate>(&s)) {
    json pt = json::array();
    for (const auto& c : t->point) pt.push_back(scalar_to_json(c));
    return {{"type", "translate"}, {"point", pt}};
  }
  return {{"type", "open"}, {"box", box_to_json(std::get<Open>(s).box)}};
}

ChartStep step_from_json(const json& j, int q) {
  std::string type = field(j, "type").get<std::string>();
  if (type == "blowup") return BlowUp{field(j, "center").get<std::vector<int>>(), field(j, "chart").get<int>()};
  if (type == "powersub") return PowerSub{exponent_from(field(j, "gamma"), q), field(j, "eps").get<std::vector<int>>()};
  if (type == "translate") {
    Translate t;
    for (const auto& c : field(j, "point")) t.point.push_back(scalar_from_json(c));
    return t;
  }
  if (type == "open") return Open{box_from(field(j, "box"))};
  bad("unknown chart step '" + type + "'");
}

ProblemInput problem_from_json(const json& j) {
  if (!j.is_object()) bad("problem must be a JSON object");
  if (j.value("format_version", 0) != 1) bad("unsupported format_version");
  ProblemInput p;
  p.name = j.value("name", "");
  std::string kind = field(j, "kind").get<std::string>();
  if (kind == "polynomial_family") p.kind = ProblemKind::Polynomial;
  else if (kind == "matrix_family") p.kind = ProblemKind::Matrix;
  else bad("unknown kind '" + kind + "'");
  p.n = field(j, "n").get<int>();
  p.q = field(j, "q").get<int>();
  if (p.n < 1 || p.n > 6) bad("n must lie in 1..6");
  if (p.q < 1 || p.q > 3) bad("q must lie in 1..3");
  if (j.contains("variables")) p.variables = j["variables"].get<std::vector<std::string>>();
  else
    for (int i = 1; i <= p.q; ++i) p.variables.push_back("x" + std::to_string(i));
  if (static_cast<int>(p.variables.size()) != p.q) bad("variables must have length q");
  if (j.contains("options")) p.options = j["options"];
  if (j.contains("expect")) p.expect = j["expect"];
  if (p.kind == ProblemKind::Polynomial) {
    if (j.contains("z_coeffs")) {
      const auto& c = j["z_coeffs"];
      if (static_cast<int>(c.size()) != p.n) bad("z_coeffs lists c_0..c_{n-1}");
      std::vector<Jet> zc = jets_from(c, p.q);
      zc.push_back(Jet::constant(p.q, Scalar(1)));
      p.poly = PolyFamily::from_z_coeffs(zc);
    } else {
      const auto& a = field(j, "a");
      if (static_cast<int>(a.size()) != p.n) bad("a lists a_1..a_n");
      p.poly = PolyFamily::from_coeffs(jets_from(a, p.q));
    }
  } else {
    const auto& rows = field(j, "entries");
    if (static_cast<int>(rows.size()) != p.n) bad("entries must have n rows");
    Matrix<Jet> A;
    for (const auto& r : rows) {
      if (static_cast<int>(r.size()) != p.n) bad("entries must have n columns");
      A.push_back(jets_from(r, p.q));
    }
    p.matrix = MatrixFamily::from(A);
  }
  return p;
}

json problem_to_json(const ProblemInput& p) {
  json j;
  j["format_version"] = 1;
  if (!p.name.empty()) j["name"] = p.name;
  j["kind"] = p.kind == ProblemKind::Polynomial ? "polynomial_family" : "matrix_family";
  j["n"] = p.n;
  j["q"] = p.q;
  j["variables"] = p.variables;
  if (p.kind == ProblemKind::Polynomial) {
    auto zc = p.poly.z_coeffs();
    zc.pop_back();
    j["z_coeffs"] = jets_to_json(zc);
  } else {
    json rows = json::array();
    for (const auto& r : p.matrix.A) rows.push_back(jets_to_json(r));
    j["entries"] = rows;
  }
  if (!p.options.empty()) j["options"] = p.options;
  if (!p.expect.empty()) j["expect"] = p.expect;
  return j;
}

ProblemInput read_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    bad(path + ": " + e.what());
  }
  try {
    return problem_from_json(j);
  } catch (const json::exception& e) {
    bad(path + ": " + e.what());
  }
}

json tree_to_json(const RootTree& t, int q) {
  std::function<json(const RootChart&)> leaf = [](const RootChart& c) {
    json l = {{"roots", jets_to_json(c.roots)}, {"soundness", soundness_name(c.soundness)}, {"certified", c.certified}};
    if (!c.shift_ledger.empty()) l["shift_ledger"] = c.shift_ledger;
    return l;
  };
  return {{"format_version", 1}, {"kind", "root_tree"}, {"q", q}, {"root", node_to_json(t, leaf)}};
}

RootTree root_tree_from_json(const json& j, int q) {
  try {
    if (j.value("format_version", 0) != 1) bad("unsupported format_version");
    if (j.value("q", q) != q) bad("tree dimension mismatch");
    return root_node_from(field(j, "root"), q);
  } catch (const json::exception& e) {
    bad(e.what());
  }
}

json eigen_tree_to_json(const EigenTree& t, int q) {
  std::function<json(const EigenChart&)> leaf = [](const EigenChart& c) {
    json vecs = json::array();
    for (const auto& v : c.eigenvectors) vecs.push_back(jets_to_json(v));
    return json{{"eigenvalues", jets_to_json(c.eigenvalues)},
                {"eigenvectors", vecs},
                {"soundness", soundness_name(c.soundness)},
                {"certified", c.certified}};
  };
  return {{"format_version", 1}, {"kind", "eigen_tree"}, {"q", q}, {"root", node_to_json(t, leaf)}};
}

json verification_to_json(const VerificationReport& r) {
  json leaves = json::array();
  for (const auto& l : r.leaves)
    leaves.push_back({{"leaf", l.leaf},
                      {"samples", l.samples},
                      {"max_residual", double_to_json(l.max_residual)},
                      {"max_match", double_to_json(l.max_match)},
                      {"soundness", soundness_name(l.soundness)}});
  return {{"format_version", 1},
          {"kind", "verification"},
          {"pass", r.pass},
          {"max_residual", double_to_json(r.max_residual)},
          {"max_match", double_to_json(r.max_match)},
          {"coverage", r.coverage},
          {"covered", r.covered},
          {"uncovered", r.uncovered},
          {"exact_leaves", r.exact_leaves},
          {"numeric_leaves", r.numeric_leaves},
          {"leaves", leaves}};
}

json regularity_to_json(const RegularityReport& r) {
  auto levels = [](const std::vector<LevelEstimate>& v) {
    json a = json::array();
    for (const auto& e : v)
      a.push_back({{"h", e.h},
                   {"value", double_to_json(e.value)},
                   {"cells", e.cells},
                   {"e_cells", e.e_cells},
                   {"e_measure", e.e_measure},
                   {"jump_cells", e.jump_cells},
                   {"jump_mass", double_to_json(e.jump_mass)},
                   {"sup_off_e", double_to_json(e.sup_off_e)}});
    return a;
  };
  json mo = json::array();
  for (size_t k = 0; k < r.mo_values.size(); ++k) mo.push_back({{"half", r.mo_sizes[k]}, {"mo", r.mo_values[k]}});
  return {{"format_version", 1},
          {"kind", "regularity"},
          {"l1", levels(r.l1)},
          {"l2", levels(r.l2)},
          {"mean_oscillation", mo},
          {"verdicts",
           {{"W1", verdict_name(r.w1)},
            {"W2", verdict_name(r.w2)},
            {"W3", verdict_name(r.w3)},
            {"W11", verdict_name(r.w11)},
            {"VMO", verdict_name(r.vmo)}}},
          {"notes", r.notes}};
}

}  // namespace rc
