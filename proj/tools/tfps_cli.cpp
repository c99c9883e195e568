// Command-line front end. Series travel between invocations as term-list
// JSON files (see series_to_json); small inputs can be given inline with
// `parse`. Exit codes: 0 success, 1 mathematical negative (non-member,
// blocked lift, failing fixture), 2 usage, parse, or budget errors.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <type_traits>
#include <sstream>
#include <string>
#include <vector>

#include "tfps/corpus.hpp"
#include "tfps/division.hpp"
#include "tfps/greenberg.hpp"
#include "tfps/jets.hpp"
#include "tfps/lifting.hpp"
#include "tfps/parser.hpp"
#include "tfps/weierstrass.hpp"

namespace {

constexpr int kExitMath = 1;
constexpr int kExitUsage = 2;

enum class Format { Human, Records };

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw tfps::Error("cannot open '" + path + "'");
  nlohmann::json j;
  in >> j;
  return j;
}

struct FieldTag {
  bool prime_field = false;
  std::uint64_t p = 0;
};

FieldTag field_of(const nlohmann::json& j) {
  auto name = tfps::json_field_name(j);
  if (name == "Q") return {};
  if (name.size() > 1 && name[0] == 'F')
    return {true, std::stoull(name.substr(1))};
  throw tfps::Error("unknown coefficient field '" + name + "'");
}

FieldTag field_of_files(const std::vector<std::string>& paths) {
  FieldTag tag = field_of(load_json(paths.front()));
  for (const auto& p : paths) {
    FieldTag t = field_of(load_json(p));
    if (t.prime_field != tag.prime_field || t.p != tag.p)
      throw tfps::Error("input files use different coefficient fields");
  }
  return tag;
}

template <class K>
typename K::Meta meta_from(FieldTag tag);

template <>
tfps::Rational::Meta meta_from<tfps::Rational>(FieldTag) {
  return {};
}

template <>
tfps::Fp::Meta meta_from<tfps::Fp>(FieldTag tag) {
  return {tag.p};
}

template <class K>
std::vector<tfps::Series<K>> load_series(const std::vector<std::string>& paths,
                                         typename K::Meta meta) {
  std::vector<tfps::Series<K>> out;
  for (const auto& p : paths)
    out.push_back(tfps::series_from_json<K>(load_json(p), meta));
  return out;
}

template <class K>
void emit_series(const std::string& label, const tfps::Series<K>& f,
                 Format fmt) {
  if (fmt == Format::Human) {
    std::cout << label << ": " << tfps::format_series(f) << "\n";
  } else {
    nlohmann::json j = tfps::series_to_json(f);
    j["label"] = label;
    std::cout << j.dump() << "\n";
  }
}

std::string expo_str(const tfps::Expo& e) {
  std::string s = "(";
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(e[i]);
  }
  return s + ")";
}

tfps::MonomialOrder parse_order(const std::string& spec) {
  if (spec.empty() || spec == "grlex") return {};
  tfps::MonomialOrder ord;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ','))
    ord.permutation.push_back(std::stoi(tok));
  return ord;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
  return out;
}

std::vector<std::string> split_names(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.push_back(tok);
  return out;
}

// ---------------------------------------------------------------------------
// Option bags, one per subcommand. A single options object keeps the
// recursive run-manifest path reentrant.

struct Opts {
  // shared
  Format fmt = Format::Human;
  int prec = 0;
  std::uint64_t prime = 0;
  std::string order;
  long long budget = 10000000;
  std::optional<long long> seed;

  // divide / staircase / member
  std::string dividend;
  std::vector<std::string> divisors;
  int bound = 8;
  std::string route = "both";
  std::string candidate;

  // weierstrass
  std::string input;
  int var = 0;

  // lift
  std::vector<std::string> poly;
  std::vector<std::string> system;
  std::vector<std::string> approx;
  std::string y0;
  std::string minor;
  int c = 1;
  int nx = 1;

  // jets
  int n = 1;
  int k = 2;
  int threads = 1;

  // artin
  int horizon = 6;
  int deg = 4;

  // corpus / misc
  std::string only;
  std::string expr;
  std::string vars;
  int fuzz = 0;
  std::string manifest;
};

// ---------------------------------------------------------------------------

template <class K>
int cmd_divide(const Opts& o, typename K::Meta meta) {
  auto all = o.divisors;
  auto f = tfps::series_from_json<K>(load_json(o.dividend), meta);
  tfps::DivisionFamily<K> fam(load_series<K>(all, meta), parse_order(o.order));
  auto res = tfps::hironaka_divide(f, fam);
  emit_series("remainder", res.remainder, o.fmt);
  for (std::size_t i = 0; i < res.quotients.size(); ++i)
    emit_series("quotient[" + std::to_string(i) + "]", res.quotients[i],
                o.fmt);
  return 0;
}

template <class K>
int cmd_staircase(const Opts& o, typename K::Meta meta) {
  auto gens = load_series<K>(o.divisors, meta);
  auto ord = parse_order(o.order);
  std::optional<tfps::Staircase> via_div, via_oracle;
  if (o.route == "division" || o.route == "both")
    via_div = tfps::staircase_via_division(
        tfps::DivisionFamily<K>(gens, ord), o.bound);
  if (o.route == "oracle" || o.route == "both")
    via_oracle = tfps::staircase_mod_truncation(gens, o.bound, ord);
  if (via_div && via_oracle &&
      via_div->generators != via_oracle->generators) {
    std::cerr << "routes disagree below degree " << o.bound << "\n";
    for (const auto& e : via_div->generators)
      std::cerr << "  division: " << expo_str(e) << "\n";
    for (const auto& e : via_oracle->generators)
      std::cerr << "  oracle:   " << expo_str(e) << "\n";
    return kExitMath;
  }
  const auto& st = via_div ? *via_div : *via_oracle;
  if (o.fmt == Format::Human) {
    for (const auto& e : st.generators) std::cout << expo_str(e) << "\n";
    std::cout << "# " << st.generators.size() << " generators, certified below degree "
              << st.degree_bound << "\n";
  } else {
    nlohmann::json j;
    j["generators"] = st.generators;
    j["degree_bound"] = st.degree_bound;
    std::cout << j.dump() << "\n";
  }
  return 0;
}

template <class K>
int cmd_member(const Opts& o, typename K::Meta meta) {
  auto g = tfps::series_from_json<K>(load_json(o.candidate), meta);
  auto gens = load_series<K>(o.divisors, meta);
  auto res = tfps::ideal_membership_mod(g, gens, o.bound, parse_order(o.order));
  switch (res.verdict) {
    case tfps::Membership::MemberBelowBound:
      std::cout << "member below degree " << o.bound << "\n";
      return 0;
    case tfps::Membership::NonMember:
      std::cout << "non-member; remainder term at " << expo_str(*res.certificate)
                << "\n";
      return kExitMath;
    case tfps::Membership::Unresolved:
      std::cerr << "unresolved at this degree bound; raise --bound\n";
      return kExitUsage;
  }
  return kExitUsage;
}

template <class K>
int cmd_weierstrass_prepare(const Opts& o, typename K::Meta meta) {
  auto f = tfps::series_from_json<K>(load_json(o.input), meta);
  auto data = tfps::weierstrass_prepare(f, o.var);
  if (o.fmt == Format::Human) {
    std::cout << "d: " << data.d << "\n";
    emit_series("unit", data.unit, o.fmt);
    for (int i = 1; i <= data.d; ++i)
      emit_series("a" + std::to_string(i), data.coeffs[i - 1], o.fmt);
  } else {
    nlohmann::json j;
    j["d"] = data.d;
    j["unit"] = tfps::series_to_json(data.unit);
    nlohmann::json cs = nlohmann::json::array();
    for (const auto& a : data.coeffs) cs.push_back(tfps::series_to_json(a));
    j["coefficients"] = std::move(cs);
    std::cout << j.dump() << "\n";
  }
  return 0;
}

template <class K>
int cmd_weierstrass_divide(const Opts& o, typename K::Meta meta) {
  auto g = tfps::series_from_json<K>(load_json(o.dividend), meta);
  auto f = tfps::series_from_json<K>(load_json(o.input), meta);
  auto res = tfps::weierstrass_divide(g, f, o.var);
  if (o.fmt == Format::Human) std::cout << "d: " << res.d << "\n";
  emit_series("quotient", res.quotient, o.fmt);
  emit_series("remainder", res.remainder, o.fmt);
  return 0;
}

template <class K>
int cmd_lift_newton(const Opts& o, typename K::Meta meta) {
  auto coeffs = load_series<K>(o.poly, meta);
  tfps::SeriesPoly<K> P{coeffs};
  auto ctx = coeffs.front().context();
  int target = o.prec > 0 ? o.prec : coeffs.front().precision();
  tfps::Series<K> start =
      o.y0.empty() ? tfps::Series<K>(ctx, target)
                   : tfps::series_from_json<K>(load_json(o.y0), meta);
  auto res = tfps::newton_lift_simple_root(P, start, target);
  emit_series("root", res.root, o.fmt);
  if (o.fmt == Format::Human) {
    std::cout << "residual orders:";
    for (int r : res.residual_orders) std::cout << " " << r;
    std::cout << "\n";
  } else {
    nlohmann::json j;
    j["residual_orders"] = res.residual_orders;
    std::cout << j.dump() << "\n";
  }
  return 0;
}

template <class K>
int cmd_lift_ift(const Opts& o, typename K::Meta meta) {
  auto eqs = load_series<K>(o.system, meta);
  tfps::PolySystem<K> sys(eqs.front().context(), o.nx, eqs);
  int target = o.prec > 0 ? o.prec : eqs.front().precision();
  auto sol = tfps::ift_solve_square_system(sys, target);
  for (std::size_t i = 0; i < sol.size(); ++i)
    emit_series(sys.joint->vars[o.nx + static_cast<int>(i)], sol[i], o.fmt);
  return 0;
}

template <class K>
int cmd_lift_tougeron(const Opts& o, typename K::Meta meta) {
  auto eqs = load_series<K>(o.system, meta);
  tfps::PolySystem<K> sys(eqs.front().context(), o.nx, eqs);
  auto vals = load_series<K>(o.approx, meta);
  auto cand = tfps::approximate_solution(sys, vals);

  auto slash = o.minor.find('/');
  if (slash == std::string::npos)
    throw tfps::Error("--minor expects rows/cols, e.g. 0,1/0,2");
  tfps::MinorSpec spec{parse_int_list(o.minor.substr(0, slash)),
                       parse_int_list(o.minor.substr(slash + 1))};

  auto chk = tfps::dvr_auto_delta_check(sys, cand, spec, o.c);
  if (!chk.certified) {
    std::cerr << "not certified: residual order "
              << chk.residual_order.to_string() << " < 2*" << chk.delta_order
              << " + " << o.c << "\n";
    return kExitMath;
  }
  int target = o.prec > 0 ? o.prec : vals.front().precision();
  auto lift = tfps::tougeron_lift(sys, cand, spec, o.c, target);
  for (std::size_t i = 0; i < lift.values.size(); ++i)
    emit_series(sys.joint->vars[o.nx + static_cast<int>(i)], lift.values[i],
                o.fmt);
  if (o.fmt == Format::Human) {
    std::cout << "delta order: " << lift.delta_order << "\n";
    std::cout << "correction orders:";
    for (int r : lift.correction_orders) std::cout << " " << r;
    std::cout << "\n";
  }
  return 0;
}

template <class K>
int cmd_jets_equations(const Opts& o, typename K::Meta meta) {
  auto F = load_series<K>(o.system, meta);
  auto sys = tfps::jet_equations(F, o.n);
  for (std::size_t i = 0; i < sys.equations.size(); ++i)
    emit_series("eq[" + std::to_string(i) + "]", sys.equations[i], o.fmt);
  if (o.fmt == Format::Human)
    std::cout << "# " << sys.r << " base equations, order " << sys.n << ", "
              << sys.equations.size() << " jet equations in "
              << sys.jet_ctx->arity() << " variables\n";
  return 0;
}

void emit_points(const std::vector<tfps::JetPoint<tfps::Fp>>& pts,
                 Format fmt) {
  for (const auto& pt : pts) {
    if (fmt == Format::Human) {
      std::string s = "(";
      for (std::size_t i = 0; i < pt.coords.size(); ++i) {
        if (i) s += ",";
        s += pt.coords[i].to_string();
      }
      std::cout << s << ")\n";
    } else {
      nlohmann::json j;
      std::vector<std::uint64_t> cs;
      for (const auto& c : pt.coords) cs.push_back(c.residue());
      j["order"] = pt.order;
      j["coords"] = cs;
      std::cout << j.dump() << "\n";
    }
  }
  if (fmt == Format::Human) std::cout << "# " << pts.size() << " points\n";
}

int cmd_jets_enumerate(const Opts& o, tfps::Fp::Meta meta) {
  auto F = load_series<tfps::Fp>(o.system, meta);
  emit_points(tfps::enumerate_jets(F, o.n, o.budget, o.threads), o.fmt);
  return 0;
}

int cmd_jets_image(const Opts& o, tfps::Fp::Meta meta) {
  auto F = load_series<tfps::Fp>(o.system, meta);
  emit_points(tfps::image_of_truncation(F, o.k, o.n, o.budget, o.threads),
              o.fmt);
  return 0;
}

int cmd_artin(const Opts& o, tfps::Fp::Meta meta) {
  auto eqs = load_series<tfps::Fp>(o.system, meta);
  tfps::PolySystem<tfps::Fp> sys(eqs.front().context(), o.nx, eqs);
  auto est = tfps::estimate_artin_function(sys, o.c, o.horizon, o.deg,
                                           o.budget);
  if (o.fmt == Format::Human) {
    std::cout << "c: " << est.c << "  p: " << est.p << "\n";
    std::cout << "lower: " << est.lower << "\n";
    std::cout << "upper: "
              << (est.upper ? std::to_string(*est.upper) : "none (horizon "
                  + std::to_string(est.horizon) + ")") << "\n";
    if (est.empty_level)
      std::cout << "first empty level: " << *est.empty_level << "\n";
    std::cout << "certified: " << est.certified_count << "\n";
    std::cout << "blocked witnesses: " << est.blocked_witnesses.size() << "\n";
  } else {
    nlohmann::json j;
    j["c"] = est.c;
    j["p"] = est.p;
    j["lower"] = est.lower;
    if (est.upper) j["upper"] = *est.upper;
    if (est.empty_level) j["empty_level"] = *est.empty_level;
    j["last_level_searched"] = est.last_level_searched;
    j["certified"] = est.certified_count;
    j["blocked"] = est.blocked_witnesses.size();
    std::cout << j.dump() << "\n";
  }
  return 0;
}

int cmd_verify_examples(const Opts& o) {
  auto gaps = tfps::coverage_gaps();
  for (const auto& g : gaps)
    std::cerr << "uncovered topic: " << g << "\n";
  bool ok = gaps.empty();
  for (const auto& rep : tfps::verify_examples(o.only, o.prec)) {
    ok = ok && rep.all_pass;
    if (o.fmt == Format::Human) {
      std::cout << (rep.all_pass ? "pass " : "FAIL ") << rep.id << "\n";
      for (const auto& c : rep.checks)
        std::cout << "  " << (c.pass ? "pass " : "FAIL ") << c.name << "\n";
    } else {
      nlohmann::json j;
      j["id"] = rep.id;
      j["all_pass"] = rep.all_pass;
      nlohmann::json cs = nlohmann::json::array();
      for (const auto& c : rep.checks)
        cs.push_back({{"name", c.name}, {"pass", c.pass}});
      j["checks"] = std::move(cs);
      std::cout << j.dump() << "\n";
    }
  }
  return ok ? 0 : kExitMath;
}

int cmd_encode_ode(const Opts& o) {
  auto j = load_json(o.input);
  if (field_of(j).prime_field)
    throw tfps::Error("encode-ode works over Q");
  auto P = tfps::series_from_json<tfps::Rational>(j, {});
  auto sys = tfps::encode_ode_system(P, o.n);
  for (std::size_t i = 0; i < sys.equations.size(); ++i)
    emit_series("E" + std::to_string(i + 1), sys.equations[i], o.fmt);
  if (o.fmt == Format::Human) {
    for (const auto& [name, deps] : sys.dependencies) {
      std::cout << name << " depends on:";
      for (const auto& d : deps) std::cout << " " << d;
      std::cout << "\n";
    }
  }
  return 0;
}

template <class K>
int cmd_parse(const Opts& o, typename K::Meta meta) {
  auto names = split_names(o.vars);
  if (names.empty()) throw tfps::Error("--vars must list variable names");
  auto ctx = tfps::make_context<K>(names, meta);
  int prec = o.prec > 0 ? o.prec : 8;

  if (o.fuzz > 0) {
    if (!o.seed)
      throw tfps::Error("--fuzz needs an explicit --seed for reproducibility");
    std::mt19937_64 rng(static_cast<std::uint64_t>(*o.seed));
    std::uniform_int_distribution<int> ed(0, prec - 1), cd(-9, 9), td(1, 6);
    for (int it = 0; it < o.fuzz; ++it) {
      tfps::Series<K> f(ctx, prec);
      for (int t = td(rng); t > 0; --t) {
        tfps::Expo e(names.size());
        int room = prec - 1;
        for (auto& x : e) {
          x = ed(rng) % (room + 1);
          room -= x;
        }
        f.add_term(e, K::from_long(meta, cd(rng)));
      }
      auto back = tfps::parse_formatted<K>(tfps::format_series(f), ctx, prec);
      if (!(back - f).is_zero() || back.precision() != f.precision()) {
        std::cerr << "round-trip mismatch on " << tfps::format_series(f)
                  << "\n";
        return kExitMath;
      }
    }
    std::cout << o.fuzz << " round trips ok\n";
    return 0;
  }

  auto f = tfps::parse_expr<K>(o.expr, ctx, prec);
  auto back = tfps::parse_formatted<K>(tfps::format_series(f), ctx, prec);
  if (!(back - f).is_zero()) {
    std::cerr << "round-trip mismatch\n";
    return kExitMath;
  }
  if (o.fmt == Format::Human)
    std::cout << tfps::format_series(f) << "\n";
  else
    std::cout << tfps::series_to_json(f).dump() << "\n";
  return 0;
}

int run(const std::vector<std::string>& args);

int cmd_run_manifest(const Opts& o) {
  std::ifstream in(o.manifest);
  if (!in) throw tfps::Error("cannot open '" + o.manifest + "'");
  std::string line;
  int worst = 0;
  std::vector<std::pair<std::string, int>> rows;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> argv;
    std::stringstream ss(line);
    std::string tok;
    while (ss >> tok) argv.push_back(tok);
    int status = run(argv);
    rows.push_back({line, status});
    worst = std::max(worst, status);
  }
  for (const auto& [cmd, status] : rows)
    std::cout << status << "\t" << cmd << "\n";
  std::cout << "# " << rows.size() << " commands, worst exit " << worst
            << "\n";
  return worst;
}

// Dispatches on the coefficient field of the input files (falling back to
// --prime for file-free subcommands like parse).
template <class F>
int with_field(const std::vector<std::string>& paths, F&& go) {
  FieldTag tag = field_of_files(paths);
  if (tag.prime_field)
    return go(std::type_identity<tfps::Fp>{}, meta_from<tfps::Fp>(tag));
  return go(std::type_identity<tfps::Rational>{},
            meta_from<tfps::Rational>(tag));
}

int run(const std::vector<std::string>& args) {
  CLI::App app{"exact truncated multivariate power series toolkit"};
  app.require_subcommand(1);
  Opts o;
  std::string format = "human";

  auto add_common = [&](CLI::App* s) {
    s->add_option("--format", format, "human or records")
        ->check(CLI::IsMember({"human", "records"}));
    s->add_option("--prec", o.prec, "working precision");
  };

  auto* divide = app.add_subcommand("divide", "divide a series by a family");
  divide->add_option("--dividend", o.dividend)->required();
  divide->add_option("--divisors", o.divisors)->required()->expected(-1);
  divide->add_option("--order", o.order, "grlex or a variable permutation");
  add_common(divide);

  auto* staircase =
      app.add_subcommand("staircase", "staircase of a generating family");
  staircase->add_option("--generators", o.divisors)->required()->expected(-1);
  staircase->add_option("--bound", o.bound, "certify below this degree");
  staircase->add_option("--route", o.route, "division, oracle, or both")
      ->check(CLI::IsMember({"division", "oracle", "both"}));
  staircase->add_option("--order", o.order);
  add_common(staircase);

  auto* member =
      app.add_subcommand("member", "truncated ideal-membership test");
  member->add_option("--candidate", o.candidate)->required();
  member->add_option("--generators", o.divisors)->required()->expected(-1);
  member->add_option("--bound", o.bound);
  member->add_option("--order", o.order);
  add_common(member);

  auto* wei = app.add_subcommand("weierstrass", "preparation and division");
  wei->require_subcommand(1);
  auto* wprep = wei->add_subcommand("prepare");
  wprep->add_option("--input", o.input)->required();
  wprep->add_option("--var", o.var, "distinguished variable index");
  add_common(wprep);
  auto* wdiv = wei->add_subcommand("divide");
  wdiv->add_option("--dividend", o.dividend)->required();
  wdiv->add_option("--input", o.input, "the regular divisor")->required();
  wdiv->add_option("--var", o.var);
  add_common(wdiv);

  auto* lift = app.add_subcommand("lift", "exact solutions from approximate ones");
  lift->require_subcommand(1);
  auto* lnewton = lift->add_subcommand("newton");
  lnewton->add_option("--poly", o.poly, "coefficient files, low degree first")
      ->required()
      ->expected(-1);
  lnewton->add_option("--y0", o.y0, "starting approximation (default 0)");
  add_common(lnewton);
  auto* lift_ift = lift->add_subcommand("ift");
  lift_ift->add_option("--system", o.system)->required()->expected(-1);
  lift_ift->add_option("--nx", o.nx, "number of base variables");
  add_common(lift_ift);
  auto* ltoug = lift->add_subcommand("tougeron");
  ltoug->add_option("--system", o.system)->required()->expected(-1);
  ltoug->add_option("--approx", o.approx)->required()->expected(-1);
  ltoug->add_option("--minor", o.minor, "rows/cols, e.g. 0/1")->required();
  ltoug->add_option("--c", o.c, "closeness exponent");
  ltoug->add_option("--nx", o.nx);
  add_common(ltoug);

  auto* jets = app.add_subcommand("jets", "jet spaces over finite fields");
  jets->require_subcommand(1);
  auto* jeq = jets->add_subcommand("equations");
  jeq->add_option("--system", o.system)->required()->expected(-1);
  jeq->add_option("-n,--n", o.n, "jet order");
  add_common(jeq);
  auto* jenum = jets->add_subcommand("enumerate");
  jenum->add_option("--system", o.system)->required()->expected(-1);
  jenum->add_option("-n,--n", o.n);
  jenum->add_option("--budget", o.budget);
  jenum->add_option("--threads", o.threads);
  add_common(jenum);
  auto* jimg = jets->add_subcommand("image");
  jimg->add_option("--system", o.system)->required()->expected(-1);
  jimg->add_option("-k,--k", o.k, "source jet order");
  jimg->add_option("-n,--n", o.n, "target jet order");
  jimg->add_option("--budget", o.budget);
  jimg->add_option("--threads", o.threads);
  add_common(jimg);

  auto* artin = app.add_subcommand("artin", "empirical Artin-function data");
  artin->require_subcommand(1);
  auto* aest = artin->add_subcommand("estimate");
  aest->add_option("--system", o.system)->required()->expected(-1);
  aest->add_option("-c,--c", o.c, "target closeness")->required();
  aest->add_option("--horizon", o.horizon, "deepest level searched");
  aest->add_option("--deg", o.deg, "candidate degree bound");
  aest->add_option("--budget", o.budget);
  aest->add_option("--nx", o.nx);
  add_common(aest);

  auto* verify =
      app.add_subcommand("verify-examples", "run the worked-example corpus");
  verify->add_option("--only", o.only, "a single fixture id");
  add_common(verify);

  auto* ode = app.add_subcommand("encode-ode",
                                 "differential equation as a polynomial system");
  ode->add_option("--equation", o.input, "P in variables x,y,z1..zn")
      ->required();
  ode->add_option("-n,--n", o.n, "derivative order")->required();
  add_common(ode);

  auto* parse = app.add_subcommand("parse", "parse, print, round-trip check");
  parse->add_option("--expr", o.expr);
  parse->add_option("--vars", o.vars, "comma-separated variable names")
      ->required();
  parse->add_option("--prime", o.prime, "coefficient field F_p (default Q)");
  parse->add_option("--fuzz", o.fuzz, "random round-trip count");
  long long seed_val = 0;
  auto* seed_opt = parse->add_option("--seed", seed_val, "RNG seed for --fuzz");
  add_common(parse);

  auto* manifest = app.add_subcommand("run-manifest",
                                      "run commands listed in a file");
  manifest->add_option("path", o.manifest)->required();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(std::move(rev));
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }
  o.fmt = format == "records" ? Format::Records : Format::Human;
  if (seed_opt->count() > 0) o.seed = seed_val;

  try {
    if (divide->parsed()) {
      std::vector<std::string> probe = o.divisors;
      probe.push_back(o.dividend);
      return with_field(probe, [&](auto kval, auto meta) {
        return cmd_divide<typename decltype(kval)::type>(o, meta);
      });
    }
    if (staircase->parsed())
      return with_field(o.divisors, [&](auto kval, auto meta) {
        return cmd_staircase<typename decltype(kval)::type>(o, meta);
      });
    if (member->parsed()) {
      std::vector<std::string> probe = o.divisors;
      probe.push_back(o.candidate);
      return with_field(probe, [&](auto kval, auto meta) {
        return cmd_member<typename decltype(kval)::type>(o, meta);
      });
    }
    if (wprep->parsed())
      return with_field({o.input}, [&](auto kval, auto meta) {
        return cmd_weierstrass_prepare<typename decltype(kval)::type>(o, meta);
      });
    if (wdiv->parsed())
      return with_field({o.dividend, o.input}, [&](auto kval, auto meta) {
        return cmd_weierstrass_divide<typename decltype(kval)::type>(o, meta);
      });
    if (lnewton->parsed())
      return with_field(o.poly, [&](auto kval, auto meta) {
        return cmd_lift_newton<typename decltype(kval)::type>(o, meta);
      });
    if (lift_ift->parsed())
      return with_field(o.system, [&](auto kval, auto meta) {
        return cmd_lift_ift<typename decltype(kval)::type>(o, meta);
      });
    if (ltoug->parsed()) {
      std::vector<std::string> probe = o.system;
      probe.insert(probe.end(), o.approx.begin(), o.approx.end());
      return with_field(probe, [&](auto kval, auto meta) {
        return cmd_lift_tougeron<typename decltype(kval)::type>(o, meta);
      });
    }
    if (jeq->parsed())
      return with_field(o.system, [&](auto kval, auto meta) {
        return cmd_jets_equations<typename decltype(kval)::type>(o, meta);
      });
    if (jenum->parsed() || jimg->parsed() || aest->parsed()) {
      FieldTag tag = field_of_files(o.system);
      if (!tag.prime_field)
        throw tfps::Error("this subcommand needs F_p inputs");
      auto meta = meta_from<tfps::Fp>(tag);
      if (jenum->parsed()) return cmd_jets_enumerate(o, meta);
      if (jimg->parsed()) return cmd_jets_image(o, meta);
      return cmd_artin(o, meta);
    }
    if (verify->parsed()) return cmd_verify_examples(o);
    if (ode->parsed()) return cmd_encode_ode(o);
    if (parse->parsed()) {
      if (o.prime > 0)
        return cmd_parse<tfps::Fp>(o, tfps::Fp::Meta{o.prime});
      return cmd_parse<tfps::Rational>(o, {});
    }
    if (manifest->parsed()) return cmd_run_manifest(o);
  } catch (const tfps::BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitUsage;
  } catch (const tfps::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const tfps::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input file error: " << e.what() << "\n";
    return kExitUsage;
  }
  std::cerr << "unknown subcommand\n";
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.push_back(argv[i]);
  return run(args);
}
