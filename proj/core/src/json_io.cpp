#include "dominion/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace dominion {

using nlohmann::json;

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

JsonWriter& JsonWriter::begin_object() {
  comma();
  out_ += '{';
  need_comma_.push_back(false);
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  out_ += '}';
  need_comma_.pop_back();
  if (!need_comma_.empty()) need_comma_.back() = true;
  return *this;
}

JsonWriter& JsonWriter::begin_array() {
  comma();
  out_ += '[';
  need_comma_.push_back(false);
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  out_ += ']';
  need_comma_.pop_back();
  if (!need_comma_.empty()) need_comma_.back() = true;
  return *this;
}

void JsonWriter::comma() {
  if (after_key_) {
    after_key_ = false;
    return;
  }
  if (!need_comma_.empty()) {
    if (need_comma_.back()) out_ += ',';
    need_comma_.back() = true;
  }
}

JsonWriter& JsonWriter::key(const std::string& k) {
  comma();
  out_ += '"';
  out_ += k;
  out_ += "\":";
  after_key_ = true;
  return *this;
}

JsonWriter& JsonWriter::value(double x) {
  comma();
  out_ += format_double(x);
  return *this;
}

JsonWriter& JsonWriter::value(int x) {
  comma();
  out_ += std::to_string(x);
  return *this;
}

JsonWriter& JsonWriter::value(uint64_t x) {
  comma();
  out_ += std::to_string(x);
  return *this;
}

JsonWriter& JsonWriter::value(bool b) {
  comma();
  out_ += b ? "true" : "false";
  return *this;
}

JsonWriter& JsonWriter::value(const std::string& s) {
  comma();
  out_ += '"';
  for (char c : s) {
    switch (c) {
      case '"': out_ += "\\\""; break;
      case '\\': out_ += "\\\\"; break;
      case '\n': out_ += "\\n"; break;
      case '\t': out_ += "\\t"; break;
      case '\r': out_ += "\\r"; break;
      default: out_ += c;
    }
  }
  out_ += '"';
  return *this;
}

JsonWriter& JsonWriter::value(const char* s) { return value(std::string(s)); }

JsonWriter& JsonWriter::value(const RVec& v) {
  begin_array();
  for (double x : v) value(x);
  return end_array();
}

JsonWriter& JsonWriter::value(const CVec& v) {
  begin_array();
  for (const auto& z : v) {
    begin_array();
    value(z.real());
    value(z.imag());
    end_array();
  }
  return end_array();
}

JsonWriter& JsonWriter::value(const Matrix& m) {
  begin_array();
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      begin_array();
      value(m(i, j).real());
      value(m(i, j).imag());
      end_array();
    }
  return end_array();
}

JsonWriter& JsonWriter::null_value() {
  comma();
  out_ += "null";
  return *this;
}

namespace {

json parse_or_throw(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded())
    throw Error(ErrorCode::SchemaViolation, "input is not valid JSON", "");
  return j;
}

void require(bool cond, const std::string& message, const std::string& path) {
  if (!cond) throw Error(ErrorCode::SchemaViolation, message, path);
}

double get_number(const json& j, const std::string& path) {
  require(j.is_number(), "expected a number", path);
  return j.get<double>();
}

Matrix parse_complex_matrix(const json& j, int rows, int cols, const std::string& path) {
  require(j.is_array(), "expected a row-major array of [re, im] pairs", path);
  require(static_cast<int>(j.size()) == rows * cols,
          "matrix entry count does not match its shape", path);
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int jj = 0; jj < cols; ++jj) {
      const json& e = j[static_cast<size_t>(i * cols + jj)];
      const std::string epath = path + "/" + std::to_string(i * cols + jj);
      require(e.is_array() && e.size() == 2, "matrix entries are [re, im] pairs", epath);
      m(i, jj) = cplx(get_number(e[0], epath + "/0"), get_number(e[1], epath + "/1"));
    }
  return m;
}

struct GraphParts {
  WeightedGraph graph;
  json root;
  std::map<std::string, int> index;
};

GraphParts parse_graph_parts(const std::string& text) {
  GraphParts parts;
  parts.root = parse_or_throw(text);
  const json& j = parts.root;
  require(j.is_object(), "instance must be a JSON object", "");
  require(j.contains("vertices") && j["vertices"].is_array(), "missing vertex list", "/vertices");

  WeightedGraph& g = parts.graph;
  for (const auto& v : j["vertices"]) {
    require(v.is_string(), "vertex labels are strings", "/vertices");
    const std::string label = v.get<std::string>();
    require(parts.index.emplace(label, g.vertex_count()).second, "duplicate vertex label",
            "/vertices/" + label);
    g.vertices.push_back(label);
  }
  const int n = g.vertex_count();
  require(n >= 1, "at least one vertex required", "/vertices");

  require(j.contains("m") && j["m"].is_object(), "missing vertex measure", "/m");
  g.m.assign(static_cast<size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    const std::string& lbl = g.vertices[static_cast<size_t>(i)];
    require(j["m"].contains(lbl), "measure missing for vertex", "/m/" + lbl);
    g.m[static_cast<size_t>(i)] = get_number(j["m"][lbl], "/m/" + lbl);
  }
  g.c.assign(static_cast<size_t>(n), 0.0);
  if (j.contains("c")) {
    require(j["c"].is_object(), "killing term must be an object", "/c");
    for (int i = 0; i < n; ++i) {
      const std::string& lbl = g.vertices[static_cast<size_t>(i)];
      if (j["c"].contains(lbl)) g.c[static_cast<size_t>(i)] = get_number(j["c"][lbl], "/c/" + lbl);
    }
  }

  // collect edges; both orientations may appear but must agree
  std::map<std::pair<int, int>, double> collected;
  if (j.contains("edges")) {
    require(j["edges"].is_array(), "edges must be an array of [x, y, b] triples", "/edges");
    size_t idx = 0;
    for (const auto& e : j["edges"]) {
      const std::string path = "/edges/" + std::to_string(idx++);
      require(e.is_array() && e.size() == 3, "edges are [x, y, b] triples", path);
      require(e[0].is_string() && e[1].is_string(), "edge endpoints are vertex labels", path);
      const auto ix = parts.index.find(e[0].get<std::string>());
      const auto iy = parts.index.find(e[1].get<std::string>());
      require(ix != parts.index.end() && iy != parts.index.end(), "edge endpoint unknown", path);
      const double b = get_number(e[2], path + "/2");
      require(ix->second != iy->second, "loops are not allowed (b(x,x) = 0)", path);
      int x = ix->second, y = iy->second;
      if (x > y) std::swap(x, y);
      const auto it = collected.find({x, y});
      if (it != collected.end()) {
        require(std::abs(it->second - b) <= 1e-12 * (1.0 + std::abs(b)),
                "edge weight is not symmetric", path);
      } else if (b != 0.0) {
        require(b > 0.0, "edge weights must be positive", path);
        collected[{x, y}] = b;
      }
    }
  }
  for (const auto& [xy, b] : collected) g.edges.push_back({xy.first, xy.second, b});
  g.validate();
  return parts;
}

}  // namespace

InstanceKind detect_instance_kind(const std::string& text) {
  const json j = parse_or_throw(text);
  require(j.is_object(), "instance must be a JSON object", "");
  if (j.contains("cone")) return InstanceKind::ConeVector;
  if (j.contains("pairing") && j.contains("A") && j.contains("B")) return InstanceKind::OperatorPair;
  if (j.contains("space") && j.contains("B")) return InstanceKind::OperatorOnCone;
  if (j.contains("vertices")) {
    if (j.contains("fibers") || j.contains("phi") || j.contains("W")) return InstanceKind::Magnetic;
    return InstanceKind::Graph;
  }
  throw Error(ErrorCode::SchemaViolation, "unrecognized instance layout", "");
}

WeightedGraph parse_graph(const std::string& text) { return parse_graph_parts(text).graph; }

MagneticInstance parse_magnetic(const std::string& text) {
  GraphParts parts = parse_graph_parts(text);
  const json& j = parts.root;
  MagneticInstance inst;
  inst.graph = std::move(parts.graph);
  const int n = inst.graph.vertex_count();

  inst.fiber_dim.assign(static_cast<size_t>(n), 1);
  if (j.contains("fibers")) {
    require(j["fibers"].is_object(), "fiber dimensions must be an object", "/fibers");
    for (int i = 0; i < n; ++i) {
      const std::string& lbl = inst.graph.vertices[static_cast<size_t>(i)];
      if (j["fibers"].contains(lbl)) {
        require(j["fibers"][lbl].is_number_integer(), "fiber dimensions are integers",
                "/fibers/" + lbl);
        inst.fiber_dim[static_cast<size_t>(i)] = j["fibers"][lbl].get<int>();
      }
    }
  }

  for (size_t e = 0; e < inst.graph.edges.size(); ++e) {
    const auto& ed = inst.graph.edges[e];
    const std::string& lx = inst.graph.vertices[static_cast<size_t>(ed.x)];
    const std::string& ly = inst.graph.vertices[static_cast<size_t>(ed.y)];
    const int fx = inst.fiber_dim[static_cast<size_t>(ed.x)];
    const int fy = inst.fiber_dim[static_cast<size_t>(ed.y)];
    const std::string fwd_key = lx + "|" + ly;
    const std::string bwd_key = ly + "|" + lx;
    Matrix phi;
    bool have = false;
    if (j.contains("phi") && j["phi"].contains(fwd_key)) {
      phi = parse_complex_matrix(j["phi"][fwd_key], fx, fy, "/phi/" + fwd_key);
      have = true;
    }
    if (j.contains("phi") && j["phi"].contains(bwd_key)) {
      const Matrix rev = parse_complex_matrix(j["phi"][bwd_key], fy, fx, "/phi/" + bwd_key);
      // the reverse orientation must be the inverse of the forward one
      const Matrix inv = rev.adjoint();
      if (have) {
        const Matrix defect = phi - inv;
        require(defect.max_abs_entry() <= 1e-9 * (1.0 + phi.max_abs_entry()),
                "phi given in both orientations but they are not mutually inverse",
                "/phi/" + bwd_key);
      } else {
        phi = inv;
        have = true;
      }
    }
    if (!have) {
      require(fx == fy, "identity connection needs equal fiber dimensions", "/phi/" + fwd_key);
      phi = Matrix::identity(fx);
    }
    inst.phi.push_back(std::move(phi));
  }

  for (int x = 0; x < n; ++x) {
    const std::string& lbl = inst.graph.vertices[static_cast<size_t>(x)];
    const int fx = inst.fiber_dim[static_cast<size_t>(x)];
    if (j.contains("W") && j["W"].contains(lbl)) {
      inst.w.push_back(parse_complex_matrix(j["W"][lbl], fx, fx, "/W/" + lbl));
    } else {
      inst.w.push_back(Matrix(fx, fx));
    }
  }

  try {
    inst.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::SchemaViolation, e.message(), e.path());
  }
  return inst;
}

ConeInstance parse_cone_instance(const std::string& text) {
  const json j = parse_or_throw(text);
  require(j.is_object() && j.contains("cone") && j["cone"].is_object(), "missing cone spec",
          "/cone");
  const json& c = j["cone"];
  require(c.contains("variant") && c["variant"].is_string(), "missing cone variant",
          "/cone/variant");
  const std::string variant = c["variant"].get<std::string>();

  auto parse_space = [&](const json& node, const std::string& path, bool radial_default) {
    require(node.contains("points") && node["points"].is_array(), "missing point list",
            path + "/points");
    std::vector<std::string> points;
    for (const auto& p : node["points"]) {
      require(p.is_string(), "point labels are strings", path + "/points");
      points.push_back(p.get<std::string>());
    }
    RVec m(points.size(), 1.0);
    if (node.contains("m")) {
      require(node["m"].is_object(), "weights must be an object", path + "/m");
      for (size_t i = 0; i < points.size(); ++i) {
        require(node["m"].contains(points[i]), "weight missing for point", path + "/m/" + points[i]);
        m[i] = get_number(node["m"][points[i]], path + "/m/" + points[i]);
      }
    } else if (radial_default) {
      // midpoint weights of a uniform radial grid (cell i carries r dr mass
      // at r = i + 1/2)
      for (size_t i = 0; i < points.size(); ++i) m[i] = static_cast<double>(i) + 0.5;
    }
    return Space::scalar(std::move(points), std::move(m));
  };

  std::optional<Cone> cone;
  if (variant == "orthant") {
    cone = Cone::orthant(parse_space(c, "/cone", false));
  } else if (variant == "psd") {
    require(c.contains("n") && c["n"].is_number_integer(), "psd cone needs the matrix size n",
            "/cone/n");
    cone = Cone::psd_matrices(c["n"].get<int>());
  } else if (variant == "monotone") {
    cone = Cone::monotone_nonneg(parse_space(c, "/cone", true));
  } else {
    throw Error(ErrorCode::SchemaViolation, "unknown cone variant", "/cone/variant");
  }

  ConeInstance inst{std::move(*cone), std::nullopt};
  if (j.contains("vector")) {
    require(j["vector"].is_array(), "vector must be an array of reals", "/vector");
    RVec v;
    for (const auto& x : j["vector"]) v.push_back(get_number(x, "/vector"));
    require(static_cast<int>(v.size()) == inst.cone.ambient_dim(),
            "vector does not match the cone's ambient dimension", "/vector");
    inst.vector = std::move(v);
  }
  return inst;
}

namespace {

Pairing parse_pairing(const json& j, const Space& domain, const std::string& path) {
  require(j.is_object() && j.contains("variant") && j["variant"].is_string(),
          "missing pairing variant", path + "/variant");
  const std::string variant = j["variant"].get<std::string>();
  CVec zeta;
  if (j.contains("zeta")) {
    const json& z = j["zeta"];
    require(z.is_array(), "zeta is an array of [re, im] pairs", path + "/zeta");
    for (size_t i = 0; i < z.size(); ++i) {
      const json& e = z[i];
      require(e.is_array() && e.size() == 2, "zeta entries are [re, im] pairs", path + "/zeta");
      zeta.push_back(cplx(get_number(e[0], path + "/zeta"), get_number(e[1], path + "/zeta")));
    }
  }
  if (variant == "bundle_modulus") return Pairing::bundle_modulus(domain, std::move(zeta));
  if (variant == "norm") return Pairing::norm_pairing(domain, std::move(zeta));
  if (variant == "lattice_abs") return Pairing::lattice_abs(domain);
  if (variant == "rearrangement")
    return Pairing::rearrangement(domain, Space::scalar(domain.points(), domain.weights()));
  throw Error(ErrorCode::SchemaViolation, "unknown pairing variant", path + "/variant");
}

Space parse_base_space(const json& j, const std::string& path) {
  require(j.is_object() && j.contains("points") && j["points"].is_array(), "missing base points",
          path + "/points");
  std::vector<std::string> points;
  for (const auto& p : j["points"]) {
    require(p.is_string(), "point labels are strings", path + "/points");
    points.push_back(p.get<std::string>());
  }
  RVec m(points.size(), 1.0);
  if (j.contains("m")) {
    for (size_t i = 0; i < points.size(); ++i) {
      require(j["m"].contains(points[i]), "weight missing for point", path + "/m/" + points[i]);
      m[i] = get_number(j["m"][points[i]], path + "/m/" + points[i]);
    }
  }
  std::vector<int> fibers(points.size(), 1);
  if (j.contains("fibers")) {
    for (size_t i = 0; i < points.size(); ++i)
      if (j["fibers"].contains(points[i])) {
        require(j["fibers"][points[i]].is_number_integer(), "fiber dimensions are integers",
                path + "/fibers/" + points[i]);
        fibers[i] = j["fibers"][points[i]].get<int>();
      }
  }
  return Space::fibered(std::move(points), std::move(m), std::move(fibers));
}

}  // namespace

OperatorPairInstance parse_operator_pair(const std::string& text) {
  const json j = parse_or_throw(text);
  require(j.is_object() && j.contains("base"), "missing base space", "/base");
  const Space domain = parse_base_space(j["base"], "/base");
  require(j.contains("pairing"), "missing pairing spec", "/pairing");
  Pairing pairing = parse_pairing(j["pairing"], domain, "/pairing");
  require(j.contains("A"), "missing operator A", "/A");
  require(j.contains("B"), "missing operator B", "/B");
  const Matrix a = parse_complex_matrix(j["A"], domain.dim(), domain.dim(), "/A");
  const int kdim = pairing.target().dim();
  const Matrix b = parse_complex_matrix(j["B"], kdim, kdim, "/B");
  try {
    OperatorForm fa(domain, a);
    OperatorForm fb(pairing.target(), b);
    return {std::move(pairing), std::move(fa), std::move(fb)};
  } catch (const Error& e) {
    throw Error(ErrorCode::SchemaViolation, e.message(), e.path());
  }
}

OperatorOnConeInstance parse_operator_on_cone(const std::string& text) {
  const json j = parse_or_throw(text);
  require(j.is_object() && j.contains("space"), "missing space", "/space");
  const Space space = parse_base_space(j["space"], "/space");
  require(space.scalar_space(), "cone checks need a scalar space", "/space");
  std::string variant = "orthant";
  if (j.contains("cone")) {
    require(j["cone"].is_string(), "cone is the variant name here", "/cone");
    variant = j["cone"].get<std::string>();
  }
  std::optional<Cone> cone;
  if (variant == "orthant")
    cone = Cone::orthant(space);
  else if (variant == "monotone")
    cone = Cone::monotone_nonneg(space);
  else
    throw Error(ErrorCode::SchemaViolation, "operator checks run on orthant or monotone cones",
                "/cone");
  require(j.contains("B"), "missing operator B", "/B");
  const Matrix b = parse_complex_matrix(j["B"], space.dim(), space.dim(), "/B");
  try {
    OperatorForm fb(space, b);
    return {std::move(*cone), std::move(fb)};
  } catch (const Error& e) {
    throw Error(ErrorCode::SchemaViolation, e.message(), e.path());
  }
}

std::string serialize_graph(const WeightedGraph& g) {
  JsonWriter w;
  w.begin_object();
  w.key("vertices").begin_array();
  for (const auto& v : g.vertices) w.value(v);
  w.end_array();
  w.key("m").begin_object();
  for (size_t i = 0; i < g.vertices.size(); ++i) w.key(g.vertices[i]).value(g.m[i]);
  w.end_object();
  w.key("edges").begin_array();
  for (const auto& e : g.edges) {
    w.begin_array();
    w.value(g.vertices[static_cast<size_t>(e.x)]);
    w.value(g.vertices[static_cast<size_t>(e.y)]);
    w.value(e.b);
    w.end_array();
  }
  w.end_array();
  w.key("c").begin_object();
  for (size_t i = 0; i < g.vertices.size(); ++i) w.key(g.vertices[i]).value(g.c[i]);
  w.end_object();
  w.end_object();
  return w.str() + "\n";
}

std::string serialize_magnetic(const MagneticInstance& inst) {
  const WeightedGraph& g = inst.graph;
  JsonWriter w;
  w.begin_object();
  w.key("vertices").begin_array();
  for (const auto& v : g.vertices) w.value(v);
  w.end_array();
  w.key("m").begin_object();
  for (size_t i = 0; i < g.vertices.size(); ++i) w.key(g.vertices[i]).value(g.m[i]);
  w.end_object();
  w.key("edges").begin_array();
  for (const auto& e : g.edges) {
    w.begin_array();
    w.value(g.vertices[static_cast<size_t>(e.x)]);
    w.value(g.vertices[static_cast<size_t>(e.y)]);
    w.value(e.b);
    w.end_array();
  }
  w.end_array();
  w.key("c").begin_object();
  for (size_t i = 0; i < g.vertices.size(); ++i) w.key(g.vertices[i]).value(g.c[i]);
  w.end_object();
  w.key("fibers").begin_object();
  for (size_t i = 0; i < g.vertices.size(); ++i) w.key(g.vertices[i]).value(inst.fiber_dim[i]);
  w.end_object();
  w.key("phi").begin_object();
  for (size_t e = 0; e < g.edges.size(); ++e) {
    const auto& ed = g.edges[e];
    w.key(g.vertices[static_cast<size_t>(ed.x)] + "|" + g.vertices[static_cast<size_t>(ed.y)]);
    w.value(inst.phi[e]);
  }
  w.end_object();
  w.key("W").begin_object();
  for (size_t i = 0; i < g.vertices.size(); ++i) {
    w.key(g.vertices[i]);
    w.value(inst.w[i]);
  }
  w.end_object();
  w.end_object();
  return w.str() + "\n";
}

namespace {

void write_witness(JsonWriter& w, const DominationWitness& wit) {
  w.begin_object();
  w.key("check").value(wit.check);
  w.key("grid_value").value(wit.grid_value);
  w.key("block").begin_array().value(wit.block_x).value(wit.block_y).end_array();
  w.key("f1").value(wit.f1);
  w.key("f2").value(wit.f2);
  w.key("margin").value(wit.margin);
  w.end_object();
}

}  // namespace

std::string serialize_report(const DominationReport& rep, const std::string& command) {
  JsonWriter w;
  w.begin_object();
  w.key("command").value(command);
  w.key("config").begin_object();
  w.key("tol").value(rep.config.tol);
  w.key("samples").value(rep.config.samples);
  w.key("seed").value(rep.config.seed);
  w.key("t_grid").value(rep.t_grid);
  w.key("alpha_grid").value(rep.alpha_grid);
  w.end_object();
  w.key("verdicts").begin_object();
  w.key("semigroup").value(rep.semigroup);
  w.key("resolvent").value(rep.resolvent);
  w.key("form").value(rep.form);
  w.end_object();
  w.key("unanimous").value(rep.unanimous);
  w.key("worst_margins").begin_object();
  w.key("semigroup").value(rep.semigroup_margin);
  w.key("resolvent").value(rep.resolvent_margin);
  w.key("form").value(rep.form_margin);
  w.end_object();
  w.key("semigroup_per_t").value(rep.semigroup_per_t);
  w.key("resolvent_per_alpha").value(rep.resolvent_per_alpha);
  w.key("witness");
  if (rep.witness)
    write_witness(w, *rep.witness);
  else
    w.null_value();
  w.key("verdict").value(rep.semigroup && rep.resolvent && rep.form);
  w.end_object();
  return w.str() + "\n";
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidParameters, "cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidParameters, "cannot write file: " + path);
  out << content;
}

}  // namespace dominion
