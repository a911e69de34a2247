#include "ccsym/cli.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "ccsym/errors.hpp"
#include "ccsym/parse.hpp"
#include "ccsym/verify.hpp"

namespace ccsym {

namespace {

struct Options {
  std::string algebra;
  std::string f, g;
  std::string point, base, radius;
  std::optional<int> trunc;
  int steps = 1024;
  std::optional<double> tol;
  bool json = false;
  std::string id;
  int r = 2, j = 1, k = 1, n = 1;
  std::string a, b;
  std::string path, alpha, beta;
};

AlgebraSignature signature(const Options& o) {
  return o.algebra.empty() ? AlgebraSignature{Algebra::trivial(), ScalarBackend::exact}
                           : parse_algebra_signature(o.algebra);
}

// Names the flag whose text failed to parse.
template <class F>
auto parsed(const char* flag, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError& e) {
    throw ParseError(fmt::format("{}: {}", flag, e.detail()), e.position());
  }
}

const std::string& required(const std::string& value, const char* flag) {
  if (value.empty())
    throw DomainError(fmt::format("{} is required", flag));
  return value;
}

QuadratureConfig quadrature(const Options& o, double default_tol) {
  QuadratureConfig cfg;
  cfg.steps_per_segment = o.steps;
  cfg.tolerance = o.tol.value_or(default_tol);
  cfg.validate();
  return cfg;
}

RationalFunction function_flag(const AlgebraPtr& alg, const std::string& text, const char* flag) {
  return parsed(flag, [&] { return parse_function(required(text, flag), alg); });
}

ExactSeries series_flag(const Options& o, const AlgebraPtr& alg, const std::string& text, const char* flag) {
  return parsed(flag, [&] { return parse_series(required(text, flag), alg, o.trunc.value_or(kUnbounded)); });
}

double radius_flag(const Options& o, double fallback) {
  return o.radius.empty() ? fallback : parsed("--radius", [&] { return parse_real(o.radius); });
}

ExactScalar scalar_flag(const std::string& text, const char* flag, const char* fallback) {
  return parsed(flag, [&] { return parse_scalar(text.empty() ? fallback : text); });
}

FloatElement element_flag(const std::string& text, const AlgebraPtr& alg, const char* flag) {
  return widen(parsed(flag, [&] { return parse_element(required(text, flag), alg); }));
}

std::string element_text(const ExactElement& e, ScalarBackend backend) {
  return backend == ScalarBackend::exact ? e.str() : widen(e).str();
}

int emit(const CheckReport& rep, const Options& o, std::ostream& out) {
  out << (o.json ? rep.json() + "\n" : rep.text());
  return rep.pass ? 0 : 1;
}

int emit_all(const std::vector<CheckReport>& reps, const Options& o, std::ostream& out) {
  bool pass = true;
  if (o.json) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& rep : reps)
      arr.push_back(nlohmann::json::parse(rep.json()));
    out << arr.dump(2) << "\n";
  }
  for (const auto& rep : reps) {
    if (!o.json)
      out << rep.text();
    pass = pass && rep.pass;
  }
  return pass ? 0 : 1;
}

int emit_value(const std::string& command, const std::string& text, const std::optional<FloatElement>& value,
               const Options& o, std::ostream& out) {
  if (!o.json) {
    out << text << "\n";
    return 0;
  }
  nlohmann::json j;
  j["command"] = command;
  j["value"] = text;
  if (value) {
    nlohmann::json comps = nlohmann::json::object();
    const auto& alg = *value->algebra();
    for (std::size_t i = 0; i < alg.dimension(); ++i)
      comps[alg.monomial_name(i)] = {value->coeff(i).real(), value->coeff(i).imag()};
    j["components"] = comps;
  }
  out << j.dump(2) << "\n";
  return 0;
}

int run_symbol(const Options& o, std::ostream& out) {
  const AlgebraSignature sig = signature(o);
  const ExactSeries f = series_flag(o, sig.algebra, o.f, "--f");
  const ExactSeries g = series_flag(o, sig.algebra, o.g, "--g");
  const ExactElement v = cc_symbol_series(f, g).value();
  return emit_value("symbol", element_text(v, sig.backend), widen(v), o, out);
}

int run_tame(const Options& o, std::ostream& out) {
  const AlgebraSignature sig = signature(o);
  const ExactSeries f = series_flag(o, sig.algebra, o.f, "--f");
  const ExactSeries g = series_flag(o, sig.algebra, o.g, "--g");
  const ExactScalar v = tame_symbol(f, g);
  const std::string text = sig.backend == ScalarBackend::exact ? v.str() : ScalarTraits<FloatScalar>::format(v.to_complex());
  return emit_value("tame", text, FloatElement(sig.algebra, v.to_complex()), o, out);
}

int run_factorize(const Options& o, std::ostream& out) {
  const AlgebraSignature sig = signature(o);
  ExactSeries f = series_flag(o, sig.algebra, o.f, "--f");
  if (f.trunc_order() == kUnbounded)
    f = f.truncated(f.upper_bound() + 8);
  return emit_value("factorize", factorize(f).str(), std::nullopt, o, out);
}

int run_lemma(const Options& o, std::ostream& out) {
  const AlgebraSignature sig = signature(o);
  const AlgebraPtr& alg = sig.algebra;
  if (o.id == "3.2")
    return emit(winding_power_check(o.r, radius_flag(o, 0.5), quadrature(o, 1e-8)), o, out);
  if (o.id == "3.3") {
    const RationalFunction f = function_flag(alg, o.f, "--f");
    const ExactScalar c = scalar_flag(o.point, "--point", "0");
    double radius = 0.5;
    if (o.radius.empty()) {
      double near = std::numeric_limits<double>::infinity();
      for (const auto& fac : f.factors())
        if (!(fac.root == c))
          near = std::min(near, std::abs(fac.root.to_complex() - c.to_complex()));
      if (std::isfinite(near))
        radius = near / 2;
    } else {
      radius = radius_flag(o, radius);
    }
    return emit(residue_winding_check(f, c, radius, quadrature(o, 1e-8)), o, out);
  }
  if (o.id == "3.4")
    return emit(log_binomial_check(o.n, element_flag(o.a, alg, "--a"), radius_flag(o, 0.5), quadrature(o, 1e-7)), o,
                out);
  if (o.id == "3.5")
    return emit(binomial_pair_check(o.j, o.k, element_flag(o.a, alg, "--a"), element_flag(o.b, alg, "--b"),
                                    radius_flag(o, 1), quadrature(o, 1e-7)),
                o, out);
  if (o.id == "3.6") {
    const RationalFunction f = function_flag(alg, o.f, "--f");
    const SpherePoint s = parsed("--point", [&] { return parse_point(o.point.empty() ? "0" : o.point); });
    const ExactScalar p = scalar_flag(o.base, "--base", "-1/2");
    return emit(endpoint_log_check(f, s, p, radius_flag(o, default_loop_radius(f, f, s, p)), quadrature(o, 1e-8)), o,
                out);
  }
  throw DomainError(fmt::format("unknown lemma id '{}'; expected 3.2, 3.3, 3.4, 3.5 or 3.6", o.id));
}

int run_main_theorem(const Options& o, std::ostream& out) {
  const AlgebraPtr alg = signature(o).algebra;
  const RationalFunction f = function_flag(alg, o.f, "--f");
  const RationalFunction g = function_flag(alg, o.g, "--g");
  const SpherePoint s = parsed("--point", [&] { return parse_point(required(o.point, "--point")); });
  const ExactScalar p = scalar_flag(o.base, "--base", "-1/2");
  const double radius = radius_flag(o, default_loop_radius(f, g, s, p));
  return emit(main_theorem_check(f, g, s, p, radius, quadrature(o, 1e-6)), o, out);
}

int run_weil(const Options& o, std::ostream& out) {
  const AlgebraPtr alg = signature(o).algebra;
  const RationalFunction f = function_flag(alg, o.f, "--f");
  const RationalFunction g = function_flag(alg, o.g, "--g");
  return emit(weil_reciprocity_check(f, g, o.trunc.value_or(16)), o, out);
}

int run_bilinear(const Options& o, std::ostream& out) {
  const AlgebraPtr alg = signature(o).algebra;
  const RationalFunction f = function_flag(alg, o.f, "--f");
  const RationalFunction g = function_flag(alg, o.g, "--g");
  const ExactScalar p = scalar_flag(o.base, "--base", "-2");
  return emit(bilinear_reciprocity_check(f, g, p, quadrature(o, 1e-6)), o, out);
}

int run_commutator(const Options& o, std::ostream& out) {
  const AlgebraPtr alg = signature(o).algebra;
  const Path alpha = parsed("--alpha", [&] { return parse_path(required(o.alpha, "--alpha")); });
  const Path beta = parsed("--beta", [&] { return parse_path(required(o.beta, "--beta")); });
  const Form w1 = Form::dlog(function_flag(alg, o.f, "--f"));
  const Form w2 = Form::dlog(function_flag(alg, o.g, "--g"));
  return emit(commutator_quadratic_check(alpha, beta, w1, w2, quadrature(o, 1e-8)), o, out);
}

int run_identities(const Options& o, std::ostream& out) { return emit_all(chen_identity_suite(quadrature(o, 1e-8)), o, out); }

int run_integrate(const Options& o, std::ostream& out) {
  const AlgebraPtr alg = signature(o).algebra;
  const Path path = parsed("--path", [&] { return parse_path(required(o.path, "--path")); });
  std::vector<Form> forms{Form::dlog(function_flag(alg, o.f, "--f"))};
  if (!o.g.empty())
    forms.push_back(Form::dlog(function_flag(alg, o.g, "--g")));
  const FloatElement v = iterated_integral(forms, path, quadrature(o, 1e-8));
  return emit_value("integrate", v.str(), v, o, out);
}

void add_algebra(CLI::App* c, Options& o) {
  c->add_option("--algebra", o.algebra, "gens=eps,delta;degree=N;scalars=exact|float (default: the complex numbers)");
}
void add_quadrature(CLI::App* c, Options& o) {
  c->add_option("--steps", o.steps, "steps per path segment")->check(CLI::PositiveNumber);
  c->add_option("--tol", o.tol, "pass tolerance");
}
void add_json(CLI::App* c, Options& o) { c->add_flag("--json", o.json, "print JSON"); }
void add_fg(CLI::App* c, Options& o, const char* what) {
  c->add_option("--f", o.f, std::string("first ") + what);
  c->add_option("--g", o.g, std::string("second ") + what);
}

} // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Local symbols of Laurent series over truncated algebras, iterated integrals and reciprocity checks"};
  app.require_subcommand(1);
  Options o;
  std::function<int()> action;

  auto* symbol = app.add_subcommand("symbol", "symbol of two Laurent series");
  add_algebra(symbol, o);
  add_fg(symbol, o, "series in x");
  symbol->add_option("--trunc", o.trunc, "truncation order of the inputs");
  add_json(symbol, o);
  symbol->callback([&] { action = [&] { return run_symbol(o, out); }; });

  auto* tame = app.add_subcommand("tame", "tame symbol over the complex numbers");
  add_algebra(tame, o);
  add_fg(tame, o, "series in x");
  tame->add_option("--trunc", o.trunc, "truncation order of the inputs");
  add_json(tame, o);
  tame->callback([&] { action = [&] { return run_tame(o, out); }; });

  auto* fact = app.add_subcommand("factorize", "canonical product decomposition of a Laurent series");
  add_algebra(fact, o);
  fact->add_option("--f", o.f, "series in x");
  fact->add_option("--trunc", o.trunc, "truncation order of the input");
  add_json(fact, o);
  fact->callback([&] { action = [&] { return run_factorize(o, out); }; });

  auto* verify = app.add_subcommand("verify", "numerical and exact checks");
  verify->require_subcommand(1);

  auto* lemma = verify->add_subcommand("lemma", "closed forms of basic iterated integrals");
  lemma->add_option("--id", o.id, "3.2, 3.3, 3.4, 3.5 or 3.6")->required();
  add_algebra(lemma, o);
  lemma->add_option("--f", o.f, "rational function (3.3, 3.6)");
  lemma->add_option("--point", o.point, "center point (3.3, 3.6)");
  lemma->add_option("--base", o.base, "base point (3.6)");
  lemma->add_option("--radius", o.radius, "circle radius");
  lemma->add_option("--r", o.r, "number of dz/z letters (3.2)");
  lemma->add_option("--n", o.n, "exponent (3.4)");
  lemma->add_option("--j", o.j, "first exponent (3.5)");
  lemma->add_option("--k", o.k, "second exponent (3.5)");
  lemma->add_option("--a", o.a, "coefficient (3.4, 3.5)");
  lemma->add_option("--b", o.b, "second coefficient (3.5)");
  add_quadrature(lemma, o);
  add_json(lemma, o);
  lemma->callback([&] { action = [&] { return run_lemma(o, out); }; });

  auto* main_thm = verify->add_subcommand("main-theorem", "local symbol against the exponential of an iterated integral");
  add_algebra(main_thm, o);
  add_fg(main_thm, o, "rational function");
  main_thm->add_option("--point", o.point, "support point s, or inf")->required();
  main_thm->add_option("--base", o.base, "base point (default -1/2)");
  main_thm->add_option("--radius", o.radius, "local radius of the loop");
  add_quadrature(main_thm, o);
  add_json(main_thm, o);
  main_thm->callback([&] { action = [&] { return run_main_theorem(o, out); }; });

  auto* weil = verify->add_subcommand("weil", "exact product of local symbols over the support");
  add_algebra(weil, o);
  add_fg(weil, o, "rational function");
  weil->add_option("--trunc", o.trunc, "truncation order of the local expansions (default 16)");
  add_json(weil, o);
  weil->callback([&] { action = [&] { return run_weil(o, out); }; });

  auto* bilinear = verify->add_subcommand("bilinear", "loop sum of iterated integrals around the support");
  add_algebra(bilinear, o);
  add_fg(bilinear, o, "rational function");
  bilinear->add_option("--base", o.base, "base point (default -2)");
  add_quadrature(bilinear, o);
  add_json(bilinear, o);
  bilinear->callback([&] { action = [&] { return run_bilinear(o, out); }; });

  auto* comm = verify->add_subcommand("commutator", "quadratic term over a commutator of loops");
  add_algebra(comm, o);
  add_fg(comm, o, "rational function whose dlog is integrated");
  comm->add_option("--alpha", o.alpha, "first loop");
  comm->add_option("--beta", o.beta, "second loop");
  add_quadrature(comm, o);
  add_json(comm, o);
  comm->callback([&] { action = [&] { return run_commutator(o, out); }; });

  auto* ident = verify->add_subcommand("identities", "shuffle, reversal, composition and homotopy checks");
  add_quadrature(ident, o);
  add_json(ident, o);
  ident->callback([&] { action = [&] { return run_identities(o, out); }; });

  auto* integ = app.add_subcommand("integrate", "iterated integral of df/f (then dg/g) along a path");
  add_algebra(integ, o);
  add_fg(integ, o, "rational function");
  integ->add_option("--path", o.path, "path literal");
  add_quadrature(integ, o);
  add_json(integ, o);
  integ->callback([&] { action = [&] { return run_integrate(o, out); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0)
      return app.exit(e, out, err);
    err << "error: " << e.what() << "\n";
    return 2;
  }
  if (!action) {
    err << "error: no command given\n";
    return 2;
  }
  try {
    return action();
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

} // namespace ccsym
