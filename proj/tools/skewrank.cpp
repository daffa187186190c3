// skewrank command-line tool.
//
// Reports are "key: value" lines by default and a JSON object with --format json.
// Exit codes: 0 ok, 1 verification mismatch, 2 parse/input error, 3 unsupported dimension,
// 4 exact decomposition unavailable, 5 internal invariant violation.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "skewrank/atlas.hpp"
#include "skewrank/io.hpp"

using namespace skewrank;
using json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kMismatch = 1, kParse = 2, kDimension = 3, kUnavailable = 4, kInternal = 5 };

struct Globals {
  std::string format = "text";
  uint64_t seed = 0;
  double tolerance = 1e-9;
  int jobs = 1;
  std::string table;
};

/// Ordered report that prints as key: value lines or as one JSON object.
class Report {
 public:
  void set(const std::string& key, json value) { j_[key] = std::move(value); }
  json& raw() { return j_; }
  void print(const Globals& g, std::ostream& os = std::cout) const {
    if (g.format == "json") {
      os << j_.dump(2) << "\n";
      return;
    }
    for (const auto& [k, v] : j_.items()) print_line(os, k, v);
  }

 private:
  static void print_line(std::ostream& os, const std::string& key, const json& v) {
    if (v.is_string()) {
      os << key << ": " << v.get<std::string>() << "\n";
    } else if (v.is_object()) {
      for (const auto& [k, w] : v.items()) print_line(os, key + "." + k, w);
    } else if (v.is_array() && !v.empty() && (v.front().is_object() || v.front().is_array())) {
      for (size_t i = 0; i < v.size(); ++i) print_line(os, key + "." + std::to_string(i), v[i]);
    } else {
      os << key << ": " << v.dump() << "\n";
    }
  }
  json j_ = json::object();
};

std::string read_input(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  return read_text_file(path);
}

Multivector load_tensor(const std::string& path) { return parse_tensor(read_input(path)); }

json vec_json(const Vec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

json tensor_json(const Multivector& t) { return json::parse(serialize_tensor(t)); }

json signature_json(const Signature& s) {
  json j;
  j["ambient"] = s.ambient;
  j["n_essential"] = s.n_essential;
  j["ker12"] = s.ker12;
  j["ker21"] = s.ker21;
  if (s.split_nonzero) j["split_nonzero"] = *s.split_nonzero;
  if (s.detB_nonzero) j["detB_nonzero"] = *s.detB_nonzero;
  if (s.rankB) j["rankB"] = *s.rankB;
  if (s.lkernel_dim) j["lkernel_dim"] = *s.lkernel_dim;
  if (!s.locus_counts.empty()) {
    json lc = json::object();
    for (const auto& [p, c] : s.locus_counts) lc[std::to_string(p)] = c < 0 ? json("kernel") : json(c);
    j["locus_counts"] = lc;
  }
  if (!s.aux8.empty()) {
    json aux = json::object();
    for (const auto& [k, v] : s.aux8) aux[k] = v;
    j["invariants"] = aux;
  }
  return j;
}

void classification_into(Report& r, const Multivector& t, const Classification& c) {
  json labels = json::array();
  for (OrbitLabel l : c.labels) labels.push_back(to_string(l));
  if (c.labels.size() == 1) r.set("label", to_string(c.labels[0]));
  else r.set("candidates", labels);
  r.set("rank", c.rank ? json(*c.rank) : json("unknown"));
  r.set("n_essential", c.n_essential);
  r.set("signature", signature_json(signature(t)));
  if (!c.note.empty()) r.set("note", c.note);
}

json decomposition_json(const Decomposition& d) {
  json terms = json::array();
  if (d.numeric) {
    for (const auto& nt : d.numeric_terms) {
      json vs = json::array();
      for (const auto& v : nt.vectors) {
        json a = json::array();
        for (const auto& z : v) {
          std::ostringstream os;
          os.precision(17);
          os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
          a.push_back(os.str());
        }
        vs.push_back(a);
      }
      terms.push_back(json{{"vectors", vs}});
    }
  } else {
    for (const auto& term : d.terms) {
      json vs = json::array();
      for (const auto& v : term.vectors) vs.push_back(vec_json(v));
      terms.push_back(json{{"coeff", term.coeff.str()}, {"vectors", vs}});
    }
  }
  return terms;
}

// ---------------------------------------------------------------- subcommands

int cmd_classify(const Globals& g, const std::vector<std::string>& files) {
  std::vector<Multivector> inputs;
  for (const auto& f : files) {
    Multivector t = load_tensor(f);
    if (t.is_zero()) throw ParseError(f + ": zero tensor (rank 0, no orbit)");
    inputs.push_back(std::move(t));
  }
  ClassifyOptions opts;
  opts.seed = g.seed;
  opts.tolerance = g.tolerance;
  opts.decompose = false;
  std::vector<Classification> out;
  if (inputs.size() == 1) out.push_back(classify(inputs[0], opts));
  else out = classify_batch(inputs, opts, g.jobs);
  for (size_t i = 0; i < inputs.size(); ++i) {
    if (out[i].labels.empty()) throw std::runtime_error(files[i] + ": " + out[i].note);
    Report r;
    r.set("file", files[i]);
    classification_into(r, inputs[i], out[i]);
    r.print(g);
  }
  return kOk;
}

int cmd_decompose(const Globals& g, const std::string& file, const std::string& out_dir) {
  Multivector t = load_tensor(file);
  if (t.is_zero()) throw ParseError("zero tensor (rank 0, no orbit)");
  ClassifyOptions opts;
  opts.seed = g.seed;
  opts.tolerance = g.tolerance;
  Classification c = classify(t, opts);
  Report r;
  r.set("file", file);
  classification_into(r, t, c);
  if (!c.decomposition || !c.decomposition->available) {
    r.set("decomposition", "unavailable");
    if (c.decomposition) r.set("diagnostic", c.decomposition->diagnostic);
    r.print(g);
    return kUnavailable;
  }
  const Decomposition& d = *c.decomposition;
  VerificationReport v = verify_decomposition(t, d, g.tolerance);
  r.set("mode", d.numeric ? "numeric" : "exact");
  if (!d.numeric && d.field_D != 1) r.set("field_D", d.field_D.get_str());
  r.set("terms", d.size());
  r.set("residual", v.exact ? json(v.ok ? "0" : "nonzero") : json(v.residual));
  r.set("verified", v.ok);
  r.set("decomposition", decomposition_json(d));
  if (!out_dir.empty() && !d.numeric) {
    std::filesystem::create_directories(out_dir);
    json written = json::array();
    for (size_t i = 0; i < d.terms.size(); ++i) {
      auto path = std::filesystem::path(out_dir) / ("term_" + std::to_string(i) + ".json");
      std::ofstream(path) << serialize_tensor(d.terms[i].expand());
      written.push_back(path.string());
    }
    r.set("term_files", written);
  }
  r.print(g);
  return v.ok ? kOk : kInternal;
}

int cmd_catalecticant(const Globals& g, const std::string& file, int s) {
  Multivector t = load_tensor(file);
  CatalecticantMatrix cm = catalecticant(t, s);
  Report r;
  r.set("rows", cm.M.rows());
  r.set("cols", cm.M.cols());
  r.set("rank", rank(cm.M));
  r.set("kernel_dim", cm.M.cols() - rank(cm.M));
  json rows = json::array();
  for (size_t i = 0; i < cm.M.rows(); ++i) {
    json row = json::array();
    for (size_t j = 0; j < cm.M.cols(); ++j) row.push_back(cm.M(i, j).str());
    rows.push_back(row);
  }
  if (g.format == "json") r.set("matrix", rows);
  r.print(g);
  if (g.format != "json")
    for (size_t i = 0; i < rows.size(); ++i) {
      std::cout << "row." << i << ":";
      for (const auto& x : rows[i]) std::cout << " " << x.get<std::string>();
      std::cout << "\n";
    }
  return kOk;
}

int cmd_annihilator(const Globals& g, const std::string& file) {
  Multivector t = load_tensor(file);
  GradedAnnihilator a = annihilator(t);
  Report r;
  json dims = json::array();
  for (const auto& piece : a.pieces) dims.push_back(piece.dim());
  r.set("dims", dims);
  json bases = json::object();
  for (int s = 0; s <= a.degree; ++s) {
    json b = json::array();
    for (const auto& m : a.basis(s)) b.push_back(m.str());
    bases[std::to_string(s)] = b;
  }
  r.set("basis", bases);
  r.print(g);
  return kOk;
}

int cmd_essential(const Globals& g, const std::string& file) {
  Multivector t = load_tensor(file);
  EssentialSpace es = essential_space(t);
  Report r;
  r.set("dim", es.dim());
  json b = json::array();
  for (const auto& v : es.W.vectors()) b.push_back(vec_json(v));
  r.set("basis", b);
  r.set("reduced", tensor_json(es.reduced));
  r.print(g);
  return kOk;
}

int cmd_ideal(const Globals& g, const std::vector<std::string>& points, int max_degree, const std::string& tensor) {
  std::vector<Multivector> pts;
  for (const auto& f : points) pts.push_back(load_tensor(f));
  std::optional<Multivector> t;
  if (!tensor.empty()) t = load_tensor(tensor);
  PointIdealReport rep = point_ideal(pts, max_degree, t);
  Report r;
  r.set("dims", rep.dims);
  r.set("generator_counts", rep.generator_counts);
  r.set("generator_degrees", rep.generator_degrees());
  json gens = json::object();
  for (size_t s = 0; s < rep.generators.size(); ++s) {
    if (rep.generators[s].empty()) continue;
    json b = json::array();
    for (const auto& m : rep.generators[s]) b.push_back(m.str());
    gens[std::to_string(s)] = b;
  }
  r.set("generators", gens);
  if (rep.has_tensor) {
    r.set("condition_ii", rep.condition_ii);
    r.set("condition_iii", rep.condition_iii);
  }
  r.print(g);
  return kOk;
}

int cmd_normal_form(const Globals& g, const std::string& label, bool with_sd) {
  OrbitLabel l = parse_label(label);
  if (!with_sd) {
    std::cout << serialize_tensor(normal_form(l));
    return kOk;
  }
  Decomposition d = standard_decomposition(l, g.seed);
  Report r;
  r.set("label", to_string(l));
  r.set("rank", info(l).rank);
  r.set("normal_form", tensor_json(normal_form(l)));
  r.set("decomposition", decomposition_json(d));
  r.print(g);
  return kOk;
}

int cmd_sample(const Globals& g, const std::string& label, int ambient) {
  std::cout << serialize_tensor(orbit_sample(parse_label(label), g.seed, ambient));
  return kOk;
}

int cmd_verify(const Globals& g, const std::string& tensor, const std::vector<std::string>& terms,
               const std::string& sd_label) {
  Multivector t = load_tensor(tensor);
  Report r;
  if (!sd_label.empty()) {
    Decomposition d = standard_decomposition(parse_label(sd_label), g.seed);
    if (d.dim != t.dim()) throw ContractViolation("tensor and decomposition live in different dimensions");
    VerificationReport v = verify_decomposition(t, d, g.tolerance);
    r.set("terms", v.terms);
    r.set("all_terms_decomposable", v.all_terms_decomposable);
    r.set("mode", v.exact ? "exact" : "numeric");
    r.set("residual", v.exact ? json(v.ok ? "0" : "nonzero") : json(v.residual));
    r.set("ok", v.ok);
    r.print(g);
    return v.ok ? kOk : kMismatch;
  }
  Multivector sum(t.dim(), t.degree(), t.dual());
  bool all_decomposable = true;
  for (const auto& f : terms) {
    Multivector m = load_tensor(f);
    if (m.dim() != t.dim() || m.degree() != t.degree() || m.dual() != t.dual())
      throw ContractViolation(f + ": term does not match the tensor's dimension, degree or duality");
    if (!m.is_zero() && !is_decomposable(m)) all_decomposable = false;
    sum = sum + m;
  }
  const bool ok = all_decomposable && sum == t;
  r.set("terms", terms.size());
  r.set("all_terms_decomposable", all_decomposable);
  r.set("mode", "exact");
  r.set("residual", sum == t ? "0" : "nonzero");
  r.set("ok", ok);
  r.print(g);
  return ok ? kOk : kMismatch;
}

int cmd_generate_table(const Globals& g, int samples, const std::string& out) {
  SignatureTable t = generate_signature_table(samples, g.seed, g.jobs);
  if (out.empty() || out == "-") {
    std::cout << t.to_json();
  } else {
    std::ofstream(out) << t.to_json();
    std::cerr << "wrote " << out << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"skewrank: apolarity, classification and minimal decompositions of trivectors"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", g.seed, "Seed for sampling and the rank-4 path");
  app.add_option("--tolerance", g.tolerance, "Relative residual accepted for numeric results");
  app.add_option("--jobs", g.jobs, "Worker threads for batch work")->check(CLI::PositiveNumber);
  app.add_option("--table", g.table, "Signature table overriding the built-in one")->check(CLI::ExistingFile);

  std::vector<std::string> files;
  std::string file, out_dir, label, tensor, sd_label, out;
  std::vector<std::string> points, terms;
  int s = 1, max_degree = -1, ambient = 0, samples = 20;
  bool with_sd = false;

  auto* classify_cmd = app.add_subcommand("classify", "Orbit label, rank and signature");
  classify_cmd->add_option("files", files, "TensorFiles ('-' for stdin)")->required();
  auto* decompose_cmd = app.add_subcommand("decompose", "Minimal decomposition with verification");
  decompose_cmd->add_option("file", file)->required();
  decompose_cmd->add_option("--out-dir", out_dir, "Write each term as a TensorFile here");
  auto* cat_cmd = app.add_subcommand("catalecticant", "Skew-catalecticant matrix C^{s,d-s}");
  cat_cmd->add_option("file", file)->required();
  cat_cmd->add_option("--s", s, "Degree of the contracting forms")->required();
  auto* ann_cmd = app.add_subcommand("annihilator", "Graded annihilator dimensions and bases");
  ann_cmd->add_option("file", file)->required();
  auto* ess_cmd = app.add_subcommand("essential", "Essential variables");
  ess_cmd->add_option("file", file)->required();
  auto* ideal_cmd = app.add_subcommand("ideal", "Apolar ideal of decomposable points");
  ideal_cmd->add_option("--points", points, "TensorFiles of decomposable points")->required();
  ideal_cmd->add_option("--max-degree", max_degree, "Highest degree to compute");
  ideal_cmd->add_option("--tensor", tensor, "Check apolarity conditions against this tensor");
  auto* nf_cmd = app.add_subcommand("normal-form", "Normal form of an orbit");
  nf_cmd->add_option("--label", label)->required();
  nf_cmd->add_flag("--sd", with_sd, "Also print the table's decomposition");
  auto* sample_cmd = app.add_subcommand("sample", "Random element of an orbit");
  sample_cmd->add_option("--label", label)->required();
  sample_cmd->add_option("--ambient", ambient, "Ambient dimension (default: minimal)");
  auto* verify_cmd = app.add_subcommand("verify", "Check that terms sum to a tensor");
  verify_cmd->add_option("--tensor", tensor)->required();
  auto* terms_opt = verify_cmd->add_option("--terms", terms, "TensorFiles of the terms");
  auto* sd_opt = verify_cmd->add_option("--sd", sd_label, "Use the table decomposition of this label");
  terms_opt->excludes(sd_opt);
  auto* gen_cmd = app.add_subcommand("generate-table", "Rebuild the 8-variable signature table");
  gen_cmd->add_option("--samples", samples, "Samples per label")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--out", out, "Output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kParse;
  }

  try {
    if (!g.table.empty()) set_signature_table(SignatureTable::from_json(read_text_file(g.table)));
    if (*classify_cmd) return cmd_classify(g, files);
    if (*decompose_cmd) return cmd_decompose(g, file, out_dir);
    if (*cat_cmd) return cmd_catalecticant(g, file, s);
    if (*ann_cmd) return cmd_annihilator(g, file);
    if (*ess_cmd) return cmd_essential(g, file);
    if (*ideal_cmd) return cmd_ideal(g, points, max_degree, tensor);
    if (*nf_cmd) return cmd_normal_form(g, label, with_sd);
    if (*sample_cmd) return cmd_sample(g, label, ambient);
    if (*verify_cmd) {
      if (terms.empty() && sd_label.empty()) throw ParseError("verify needs --terms or --sd");
      return cmd_verify(g, tensor, terms, sd_label);
    }
    if (*gen_cmd) return cmd_generate_table(g, samples, out);
  } catch (const UnsupportedDimension& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDimension;
  } catch (const WrongClassifier& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDimension;
  } catch (const InternalInconsistency& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const std::invalid_argument& e) {
    // ParseError, ContractViolation and bad labels all land here.
    std::cerr << "error: " << e.what() << "\n";
    return kParse;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}
