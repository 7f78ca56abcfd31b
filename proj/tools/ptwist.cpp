#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "ptwist/certificate.hpp"
#include "ptwist/errors.hpp"
#include "ptwist/hom.hpp"
#include "ptwist/minimize.hpp"
#include "ptwist/serialize.hpp"

using namespace ptwist;

namespace {

struct Options {
  SessionConfig config;
  std::string output;
  bool force = false;
  std::string word;
  std::string object = "P1";
  std::string certificate;
  std::optional<int> replay_length;
};

void check_output_free(const Options& o);

void emit(const Options& o, const std::string& contents) {
  if (o.output.empty()) return;
  write_file_atomic(o.output, contents, o.force);
  std::cout << "wrote " << o.output << "\n";
}

int print_report(const AxiomReport& r) {
  std::cout << r.to_string();
  if (!r.to_string().empty() && r.to_string().back() != '\n') std::cout << "\n";
  return r.all_passed() ? exit_ok : exit_failed;
}

int algebra_build(const Options& o) {
  check_output_free(o);
  o.config.validate();
  AlgebraPtr a = build_algebra(o.config.algebra, Field::from_name(o.config.field));
  std::cout << "basis " << a->dim() << ", graded dimension " << a->dims().to_string() << "\n";
  const std::string json = algebra_to_json(*a).dump(2) + "\n";
  if (o.output.empty())
    std::cout << json;
  else
    emit(o, json);
  return exit_ok;
}

int algebra_check(const Options& o) {
  o.config.validate();
  AlgebraPtr a = build_algebra(o.config.algebra, Field::from_name(o.config.field));
  int code = print_report(check_dg_axioms(*a));
  if (a->h()) {
    const bool central = is_central(*a, *a->h());
    std::cout << "h central: " << (central ? "yes" : "no") << "\n";
    if (!central) code = exit_failed;
  }
  if (const auto& p = a->params()) {
    const bool cy = check_cy_pairing(*a, p->n * p->k);
    std::cout << "Calabi-Yau pairing in degree " << p->n * p->k << ": " << (cy ? "perfect" : "FAILED") << "\n";
    if (!cy) code = exit_failed;
  }
  return code;
}

int spherify(const Options& o) {
  check_output_free(o);
  o.config.validate();
  AlgebraPtr a = build_algebra(o.config.algebra, Field::from_name(o.config.field));
  const SpherificationData s = build_spherification_algebra(a);
  std::cout << "B: basis " << s.extended->dim() << ", graded dimension " << s.extended->dims().to_string() << "\n";
  int code = print_report(s.axioms);
  if (const auto& p = a->params()) {
    const int d = p->n * p->k + p->k - 1;
    for (std::size_t c = 0; c < a->idempotent_count(); ++c) {
      const SemiFreeModule fp = apply_F(s, free_module(a, c));
      const bool ok = check_spherical(fp, d);
      std::cout << "F(P" << c + 1 << "): End* = " << hom_dims(fp, fp).to_string() << ", " << d
                << "-spherical: " << (ok ? "yes" : "no") << "\n";
      if (!ok) code = exit_failed;
    }
  }
  emit(o, algebra_to_json(*s.extended).dump(2) + "\n");
  return code;
}

int twist_apply(const Options& o) {
  check_output_free(o);
  const Session s = Session::open(o.config);
  const TwistContext ctx = o.config.scope == "B" ? spherical_context(*s.spherification, o.config.cap)
                                                 : p_twist_context(s.algebra, o.config.cap);
  for (const auto& w : ctx.warnings) std::cout << "warning: " << w << "\n";
  const TwistWord w = TwistWord::parse(o.word, ctx.family);
  if (w.family != ctx.family)
    throw ConfigError("scope " + o.config.scope + " uses " + std::string(1, ctx.family) + "-words");
  const WordResult r = apply_word(ctx, w, ctx.object(o.object));
  std::cout << (w.empty() ? o.object : w.to_string() + " (" + o.object + ")") << ": " << r.module.size()
            << " generators (peak " << r.peak_generators << ")\n";
  for (std::size_t i = 0; i < r.module.size(); ++i)
    std::cout << "  e" << r.module.idempotent(i) + 1 << " in degree " << r.module.degree(i) << "\n";
  std::cout << "profile: " << ctx.profile(r.module).to_string() << "\n";
  emit(o, module_to_json(r.module).dump(2) + "\n");
  return exit_ok;
}

void check_output_free(const Options& o) {
  if (!o.output.empty() && !o.force && std::filesystem::exists(o.output))
    throw ConfigError("refusing to overwrite existing file " + o.output);
}

int certify(const Options& o, const std::string& mode) {
  check_output_free(o);
  const Session s = Session::open(o.config);
  const Certificate c = mode == "free" ? certify_no_relations(s)
                        : mode == "abelian" ? certify_abelian(s)
                                            : search_relations(s);
  std::cout << c.summary();
  emit(o, c.dump());
  return c.exit_code();
}

int replay(const Options& o) {
  const ReplayResult r = replay_certificate(read_file(o.certificate), o.replay_length, o.config.threads);
  std::cout << r.regenerated.summary();
  for (const auto& m : r.mismatches) std::cout << "MISMATCH: " << m << "\n";
  std::cout << "replay: records " << (r.records_ok ? "reproduce" : "DO NOT reproduce") << ", "
            << (o.replay_length ? "re-certification at the shorter length " : "regenerated certificate ")
            << (r.identical ? (o.replay_length ? "holds" : "is byte-identical") : "FAILS") << "\n";
  return r.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spherification, P-twists and ping-pong certificates for finite dg-algebras"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML/INI file with option defaults");
  Options o;
  SessionConfig& c = o.config;
  app.add_option("--algebra", c.algebra, "pnk:n,k | two-object:n,k,m | file:path")->capture_default_str();
  app.add_option("--field", c.field, "Q or F_p / prime:p")->capture_default_str();
  app.add_option("--L", c.L, "word-length budget")->capture_default_str();
  app.add_option("--cap", c.cap, "generator-count cap per module")->capture_default_str();
  app.add_option("--seed", c.seed, "seed for randomized witness search")->capture_default_str();
  app.add_option("--scope", c.scope, "A: P-twists over A; B: spherical twists over B")->capture_default_str();
  app.add_option("--exponent-bound", c.exponent_bound, "largest |m| in ping-pong transitions")->capture_default_str();
  app.add_option("--transition-length", c.transition_length, "word length of orbit elements checked")
      ->capture_default_str();
  app.add_flag("!--no-transitions", c.transitions, "skip the ping-pong transition checks");
  app.add_option("--threads", c.threads, "worker threads (0: all cores)")->capture_default_str();
  app.add_option("--output,-o", o.output, "write the JSON artifact here (never overwrites)");
  app.add_flag("--force", o.force, "allow replacing an existing output file");

  auto* alg = app.add_subcommand("algebra", "build or check a dg-algebra");
  alg->require_subcommand(1);
  auto* alg_build = alg->add_subcommand("build", "print or write the structure constants as JSON");
  auto* alg_check = alg->add_subcommand("check", "dg-axioms, centrality of h, Calabi-Yau pairing");
  auto* sph = app.add_subcommand("spherify", "build B = A[e]/e^2 and check F(P_i) are spherical");
  auto* twist = app.add_subcommand("twist", "apply twist words");
  twist->require_subcommand(1);
  auto* twist_app = twist->add_subcommand("apply", "apply a word to a test object");
  twist_app->add_option("--word", o.word, "e.g. \"P1 P2'\" or \"T1 T1\"");
  twist_app->add_option("--object", o.object, "P1, P2, A (scope A) or S1, S2, B (scope B)")->capture_default_str();
  auto* cert = app.add_subcommand("certify", "emit a certificate");
  cert->require_subcommand(1);
  auto* cert_free = cert->add_subcommand("free", "no relations among words of length <= L (m >= 1)");
  auto* cert_ab = cert->add_subcommand("abelian", "the twists span Z^2 (orthogonal case m = 0)");
  auto* search = app.add_subcommand("search", "exploratory searches");
  search->require_subcommand(1);
  auto* search_rel = search->add_subcommand("relations", "words acting as a witnessed identity on all test objects");
  auto* rep = app.add_subcommand("replay", "re-verify and regenerate a certificate");
  rep->add_option("certificate", o.certificate, "certificate JSON")->required();
  rep->add_option("--upto", o.replay_length, "re-certify at a shorter length instead of byte comparison");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_config;
  }

  try {
    if (*alg_build) return algebra_build(o);
    if (*alg_check) return algebra_check(o);
    if (*sph) return spherify(o);
    if (*twist_app) return twist_apply(o);
    if (*cert_free) return certify(o, "free");
    if (*cert_ab) return certify(o, "abelian");
    if (*search_rel) return certify(o, "relations");
    if (*rep) return replay(o);
  } catch (const ResourceError& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return exit_undetermined;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return exit_failed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_config;
  }
  return exit_config;
}
