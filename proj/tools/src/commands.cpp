#include "commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <iomanip>
#include <ostream>

#include "cstar/certificate.hpp"
#include "cstar/harness.hpp"
#include "cstar/representation.hpp"
#include "cstar/solver.hpp"
#include "problem_file.hpp"

namespace cstar::cli {

using nlohmann::json;

namespace {

void print_element(std::ostream& out, const Element& x) {
  for (int j = 0; j < x.num_blocks(); ++j) {
    out << "  block " << j << ":\n";
    const Matrix& m = x.block(j);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      out << "   ";
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        const Complex v = m(r, c);
        out << ' ' << std::setw(12) << v.real();
        if (std::abs(v.imag()) > 1e-12) out << (v.imag() < 0 ? "-" : "+") << std::abs(v.imag()) << 'i';
      }
      out << '\n';
    }
  }
}

json residuals_json(const ResidualMap& r) {
  json out = json::object();
  for (const auto& [k, v] : r) out[k] = v;
  return out;
}

json witness_json(const Witness& w, const ResidualMap& residuals) {
  json vectors = json::array();
  for (const PureState& ps : w.pure_states) vectors.push_back({{"block", ps.block}, {"vector", vector_to_json(ps.vector)}});
  return {{"weights", w.weights}, {"signs", w.signs}, {"vectors", vectors}, {"residuals", residuals_json(residuals)}};
}

json empty_certificate() {
  return {{"weights", json::array()}, {"signs", json::array()}, {"vectors", json::array()}, {"residuals", json::object()}};
}

json report_json(const CheckReport& r) {
  return {{"name", r.name}, {"trials", r.trials}, {"worst_violation", r.worst_violation}, {"tolerance", r.tolerance},
          {"pass", r.pass}, {"seed", r.seed}, {"details", r.details}};
}

void print_report(std::ostream& out, const CheckReport& r) {
  out << (r.pass ? "PASS " : "FAIL ") << r.name << "  trials=" << r.trials << "  worst=" << r.worst_violation
      << "  tol=" << r.tolerance << "  seed=" << r.seed << '\n';
  for (const auto& d : r.details) out << "    " << d << '\n';
}

void print_witness(std::ostream& out, const Witness& w) {
  for (int k = 0; k < w.size(); ++k) {
    const PureState& ps = w.pure_states[static_cast<std::size_t>(k)];
    out << "  t=" << w.weights[static_cast<std::size_t>(k)] << "  sign=" << (w.signs[static_cast<std::size_t>(k)] > 0 ? '+' : '-')
        << "  block " << ps.block << "  v=(";
    for (Eigen::Index i = 0; i < ps.vector.size(); ++i) {
      out << (i ? ", " : "") << ps.vector(i).real();
      if (std::abs(ps.vector(i).imag()) > 1e-12) out << (ps.vector(i).imag() < 0 ? "-" : "+") << std::abs(ps.vector(i).imag()) << 'i';
    }
    out << ")\n";
  }
}

struct Context {
  std::ostream& out;
  std::ostream& err;
};

int cmd_dist(Context& ctx, const std::string& file, const std::string& name, double tol, long max_iterations, bool certify,
             bool as_json) {
  const ProblemFile pf = load_problem(file);
  const Element& a = pf.element(name);
  SolverOptions opts;
  opts.tol_outer = tol;
  opts.max_iterations = max_iterations;
  const ApproxResult res = certify ? best_approximation(a, pf.subalgebra, opts) : quotient_seminorm(a, pf.subalgebra, opts);
  const bool trivial = res.radius <= 1e-12;
  const bool certified = trivial || (res.certificate && res.certificate->verification.ok);
  if (as_json) {
    json cert = nullptr;
    if (certify) {
      if (res.certificate && res.certificate->witness) {
        cert = witness_json(*res.certificate->witness, res.certificate->verification.residuals);
      } else if (res.certificate) {
        cert = empty_certificate();
        cert["residuals"] = residuals_json(res.certificate->verification.residuals);
      } else if (trivial) {
        cert = empty_certificate();
      }
    }
    ctx.out << json{{"radius", res.radius}, {"minimizer", element_to_json(res.minimizer)}, {"certificate", cert},
                    {"iterations", res.iterations}}
                   .dump(2)
            << '\n';
  } else {
    ctx.out << std::setprecision(10) << "radius: " << res.radius << "\nlower bound: " << res.lower_bound
            << (res.lower_certified ? " (certified)" : " (uncertified)") << "\niterations: " << res.iterations
            << "\nminimizer:\n";
    print_element(ctx.out, res.minimizer);
    if (certify) {
      if (trivial) {
        ctx.out << "certificate: trivial (A lies in the subalgebra)\n";
      } else if (!res.certificate) {
        ctx.out << "certificate: no witness found\n";
      } else {
        ctx.out << "certificate: " << (res.certificate->verification.ok ? "verified" : "FAILED") << '\n';
        for (const auto& [k, v] : res.certificate->verification.residuals) ctx.out << "  " << k << ": " << v << '\n';
        ctx.out << "uniqueness: " << (res.certificate->uniqueness == Uniqueness::unique ? "unique" : "inconclusive") << '\n';
        if (res.certificate->witness) print_witness(ctx.out, *res.certificate->witness);
      }
    }
  }
  if (certify && !certified) {
    ctx.err << "certification failed\n";
    return certification;
  }
  return ok;
}

int cmd_check(Context& ctx, const std::string& file, const std::string& property, int trials, std::uint64_t seed,
              bool as_json) {
  const ProblemFile pf = load_problem(file);
  CheckReport r;
  if (property == "leibniz") {
    r = check_leibniz(pf.subalgebra, trials, seed);
  } else if (property == "strong") {
    r = check_strong_leibniz(pf.subalgebra, trials, seed);
  } else if (property == "same-norm") {
    r = check_same_norm(pf.subalgebra, trials, seed);
  } else if (property == "retraction") {
    r = check_radial_retraction(pf.subalgebra, trials, seed);
  } else {
    r = check_commutant_corollaries(seed, trials);
  }
  if (as_json) {
    ctx.out << report_json(r).dump(2) << '\n';
  } else {
    print_report(ctx.out, r);
  }
  return r.pass ? ok : certification;
}

int cmd_witness(Context& ctx, const std::string& file, const std::string& name, bool as_json) {
  const ProblemFile pf = load_problem(file);
  const Element& z = pf.element(name);
  if (!z.is_hermitian()) throw PreconditionError("witness: element must be Hermitian");
  const WitnessSearch search = find_witness(z, pf.subalgebra);
  for (const auto& w : search.warnings) ctx.err << "warning: " << w << '\n';
  if (!search.feasible()) {
    ctx.err << "no witness found: " << name << " is not certified minimal\n";
    return certification;
  }
  const Verification ver = verify_witness(z, *search.state, pf.subalgebra);
  const Uniqueness uniq = uniqueness_check(z, *search.state, pf.subalgebra);
  std::optional<Witness> w;
  try {
    w = caratheodory_reduce(decompose_pure(*search.state, z), pf.subalgebra);
  } catch (const Error& e) {
    ctx.err << "warning: " << e.what() << '\n';
  }
  if (as_json) {
    json j = w ? witness_json(*w, ver.residuals) : empty_certificate();
    if (!w) j["residuals"] = residuals_json(ver.residuals);
    j["verified"] = ver.ok;
    j["unique"] = uniq == Uniqueness::unique;
    ctx.out << j.dump(2) << '\n';
  } else {
    ctx.out << "witness: " << (ver.ok ? "verified" : "FAILED") << '\n';
    for (const auto& [k, v] : ver.residuals) ctx.out << "  " << k << ": " << v << '\n';
    ctx.out << "uniqueness: " << (uniq == Uniqueness::unique ? "unique" : "inconclusive") << '\n';
    if (w) {
      ctx.out << "pure states (" << w->size() << "):\n";
      print_witness(ctx.out, *w);
    }
  }
  return ver.ok ? ok : certification;
}

int cmd_gns(Context& ctx, const std::string& file, const std::string& name, bool emit_unitary, bool as_json) {
  const ProblemFile pf = load_problem(file);
  const Element& z = pf.element(name);
  if (!z.is_hermitian()) throw PreconditionError("gns: element must be Hermitian");
  const WitnessSearch search = find_witness(z, pf.subalgebra);
  if (!search.feasible()) {
    ctx.err << "no witness found: " << name << " is not certified minimal\n";
    return certification;
  }
  const CommutatorSeminorm cs = commutator_unitary(z, pf.subalgebra, *search.state);
  const double value = commutator_seminorm_eval(cs, z);
  const Matrix& u = cs.unitary;
  const double involution = (u * u - Matrix::Identity(u.rows(), u.cols())).norm();
  if (as_json) {
    json j{{"dim", cs.rep.dim}, {"commutator_seminorm", value}, {"norm", element_norm(z)},
           {"unitary_square_defect", involution}, {"homomorphism_defect", cs.rep.homomorphism_defect()}};
    if (emit_unitary) {
      json rows = json::array();
      for (Eigen::Index r = 0; r < u.rows(); ++r) rows.push_back(vector_to_json(u.row(r).transpose()));
      j["unitary"] = rows;
    }
    ctx.out << j.dump(2) << '\n';
  } else {
    ctx.out << std::setprecision(10) << "GNS dimension: " << cs.rep.dim << "\n||Z||: " << element_norm(z)
            << "\n1/2 ||[U, pi(Z)]||: " << value << "\n||U^2 - I||: " << involution
            << "\nhomomorphism defect: " << cs.rep.homomorphism_defect() << '\n';
    if (emit_unitary) {
      ctx.out << "U:\n" << u << '\n';
    }
  }
  return ok;
}

int cmd_examples(Context& ctx, bool as_json) {
  const auto reports = run_paper_examples();
  bool all = true;
  json arr = json::array();
  for (const auto& r : reports) {
    all = all && r.pass;
    if (as_json) {
      arr.push_back(report_json(r));
    } else {
      print_report(ctx.out, r);
    }
  }
  if (as_json) ctx.out << arr.dump(2) << '\n';
  return all ? ok : certification;
}

int cmd_norm(Context& ctx, const std::string& file, const std::string& name, bool as_json) {
  const ProblemFile pf = load_problem(file);
  const Element& a = pf.element(name);
  const double n = element_norm(a);
  if (as_json) {
    ctx.out << json{{"norm", n}, {"hermitian", a.is_hermitian()}}.dump(2) << '\n';
  } else {
    ctx.out << std::setprecision(12) << n << '\n';
  }
  return ok;
}

}  // namespace

void validate_dist_report(const json& r) {
  auto need = [](bool cond, const char* what) {
    if (!cond) throw std::invalid_argument(what);
  };
  need(r.is_object() && r.size() == 4, "top level");
  need(r.contains("radius") && r["radius"].is_number(), "radius");
  need(r.contains("iterations") && r["iterations"].is_number_integer(), "iterations");
  need(r.contains("minimizer") && r["minimizer"].is_array(), "minimizer");
  for (const auto& block : r["minimizer"]) {
    need(block.is_array(), "minimizer");
    for (const auto& row : block) {
      need(row.is_array() && row.size() == block.size(), "minimizer");
      for (const auto& e : row) need(e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number(), "minimizer");
    }
  }
  need(r.contains("certificate"), "certificate");
  const json& c = r["certificate"];
  if (c.is_null()) return;
  need(c.is_object() && c.size() == 4, "certificate");
  need(c.contains("weights") && c["weights"].is_array(), "certificate.weights");
  need(c.contains("signs") && c["signs"].is_array(), "certificate.signs");
  need(c.contains("vectors") && c["vectors"].is_array(), "certificate.vectors");
  need(c.contains("residuals") && c["residuals"].is_object(), "certificate.residuals");
  const std::size_t k = c["weights"].size();
  need(c["signs"].size() == k && c["vectors"].size() == k, "certificate sizes");
  for (const auto& w : c["weights"]) need(w.is_number(), "certificate.weights");
  for (const auto& s : c["signs"]) need(s == 1 || s == -1, "certificate.signs");
  for (const auto& v : c["vectors"]) {
    need(v.is_object() && v.size() == 2 && v.contains("block") && v["block"].is_number_integer(), "certificate.vectors");
    need(v.contains("vector") && v["vector"].is_array(), "certificate.vectors");
    for (const auto& e : v["vector"]) need(e.is_array() && e.size() == 2, "certificate.vectors");
  }
  for (const auto& [_, v] : c["residuals"].items()) need(v.is_number(), "certificate.residuals");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Best approximation in finite-dimensional C*-algebras", "cstar"};
  app.require_subcommand(1);
  Context ctx{out, err};
  std::string file;
  std::string element;
  bool as_json = false;
  auto common = [&](CLI::App* sub, bool with_element) {
    sub->add_option("file", file, "problem file (JSON)")->required();
    if (with_element) sub->add_option("element", element, "element name")->required();
    sub->add_flag("--json", as_json, "machine-readable output");
  };

  double tol = 1e-7;
  long max_iterations = SolverOptions{}.max_iterations;
  bool certify = false;
  auto* dist = app.add_subcommand("dist", "distance to the subalgebra");
  common(dist, true);
  dist->add_option("--tol", tol, "bracket width")->check(CLI::PositiveNumber);
  dist->add_option("--max-iterations", max_iterations, "solver iteration budget")->check(CLI::PositiveNumber);
  dist->add_flag("--certify", certify, "attach and verify a state witness");

  std::string property = "leibniz";
  int trials = 100;
  std::uint64_t seed = 1;
  auto* check = app.add_subcommand("check", "seeded property check");
  common(check, false);
  check->add_option("--property", property, "property to test")->check(CLI::IsMember({"leibniz", "strong", "same-norm", "commutant", "retraction"}));
  check->add_option("--trials", trials, "number of random trials")->check(CLI::PositiveNumber);
  check->add_option("--seed", seed, "RNG seed");

  auto* witness = app.add_subcommand("witness", "minimality witness for an element");
  common(witness, true);

  bool emit_unitary = false;
  auto* gns_cmd = app.add_subcommand("gns", "GNS representation and commutator unitary of a witness");
  common(gns_cmd, true);
  gns_cmd->add_flag("--emit-unitary", emit_unitary, "include the unitary U");

  auto* examples_cmd = app.add_subcommand("examples", "built-in worked examples");
  examples_cmd->add_flag("--json", as_json, "machine-readable output");

  auto* norm = app.add_subcommand("norm", "operator norm of an element");
  common(norm, true);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? ok : usage;
  }

  try {
    if (*dist) return cmd_dist(ctx, file, element, tol, max_iterations, certify, as_json);
    if (*check) return cmd_check(ctx, file, property, trials, seed, as_json);
    if (*witness) return cmd_witness(ctx, file, element, as_json);
    if (*gns_cmd) return cmd_gns(ctx, file, element, emit_unitary, as_json);
    if (*examples_cmd) return cmd_examples(ctx, as_json);
    if (*norm) return cmd_norm(ctx, file, element, as_json);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return parse_error;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "  bracket [" << e.lower << ", " << e.upper << "]\n";
    return budget;
  } catch (const PreconditionError& e) {
    err << "certification failed: " << e.what() << '\n';
    return certification;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  }
  return usage;
}

}  // namespace cstar::cli
