#include "riordan/cli.hpp"

#include <algorithm>
#include <functional>
#include <optional>

#include <CLI11.hpp>

#include "riordan/exprparse.hpp"
#include "riordan/serialize.hpp"

namespace riordan::cli {

namespace {

constexpr const char* kGrammar =
    "Series expressions: numbers (3, 2/5 via division, 0.25), t, + - * /, ^ with an integer\n"
    "exponent, sqrt(e), root(n, e), parentheses. Example: -t/root(2, 1 + 3*t^2)\n";

struct Outcome {
  Json body = Json::object();
  std::optional<RiordanMatrix> matrix;
  std::optional<std::string> text;  // replaces the generic text rendering
  int code = kOk;
};

struct Settings {
  long order = static_cast<long>(kDefaultOrder);
  long rows = 8;
  std::string format;
};

struct PairArgs {
  std::string g;
  std::string f;
};

void add_pair(CLI::App* cmd, PairArgs& args, const std::string& prefix = "") {
  cmd->add_option("--" + prefix + "g", args.g, "g series expression")->required();
  cmd->add_option("--" + prefix + "f", args.f, "f series expression")->required();
}

RiordanPair build_pair(const PairArgs& args, std::size_t order) {
  return RiordanPair::make(expr::evaluate(args.g, order), expr::evaluate(args.f, order));
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string scalar_text(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

bool scalar_array(const Json& j) {
  return j.is_array() && std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
}

struct Leaf {
  std::string path;
  std::vector<std::string> cells;
  bool array = false;
};

void flatten(const Json& j, const std::string& path, std::vector<Leaf>& rows) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) flatten(value, path.empty() ? key : path + "." + key, rows);
  } else if (scalar_array(j)) {
    std::vector<std::string> cells;
    for (const auto& e : j) cells.push_back(scalar_text(e));
    rows.push_back({path, std::move(cells), true});
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "." + std::to_string(i), rows);
  } else {
    rows.push_back({path, {scalar_text(j)}, false});
  }
}

std::string render(const Outcome& o, const std::string& format) {
  if (format == "json") {
    Json body = o.body;
    if (o.matrix) body["matrix"] = to_json(*o.matrix);
    return dump(body);
  }
  if (format == "csv" && o.matrix) return matrix_csv(*o.matrix);
  std::vector<Leaf> rows;
  flatten(o.body, "", rows);
  std::string out;
  if (format == "csv") {
    for (const auto& [key, cells, array] : rows) {
      out += csv_cell(key);
      for (const auto& c : cells) out += "," + csv_cell(c);
      out += "\n";
    }
    return out;
  }
  if (o.text) return *o.text;
  for (const auto& [key, cells, array] : rows) {
    out += key + ": ";
    if (!array) {
      out += cells.front();
    } else {
      out += "[";
      for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? ", " : "") + cells[i];
      out += "]";
    }
    out += "\n";
  }
  if (o.matrix) out += (out.empty() ? "" : "\n") + matrix_text(*o.matrix);
  return out;
}

Json verified(Json body) {
  body["verified"] = true;
  return body;
}

void require_verified(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::InvalidWitness, what + " failed re-verification");
}

bool reverses(const CyclotomicFps& f, const CyclotomicFps& u) {
  return compose(f, u) == compose(u, revert(f));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool interactive) {
  CLI::App app{"Exact computations in the Riordan group.\n" + std::string(kGrammar), "riordan"};
  app.require_subcommand(1);
  app.fallthrough();
  Settings settings;
  app.add_option("--order,-N", settings.order, "truncation order N")
      ->envname("RIORDAN_ORDER")
      ->check(CLI::Range(1L, 4096L));
  auto* rows_opt = app.add_option("--rows,-K", settings.rows, "matrix rows K (default min(8, N + 1))");
  rows_opt->check(CLI::Range(1L, 4097L));
  app.add_option("--format", settings.format, "text, csv or json")
      ->check(CLI::IsMember({"text", "csv", "json"}));

  std::function<Outcome(std::size_t, std::size_t)> action;
  PairArgs p1, p2, uargs;
  std::string tag_text, f_text, lambda_text;
  long p_value = 0;
  std::optional<int> target_sign;

  auto* eval = app.add_subcommand("eval", "leading K x K block of (g, f)");
  add_pair(eval, p1);
  eval->callback([&] {
    action = [&](std::size_t n, std::size_t k) {
      Outcome o;
      o.body = {{"order", n}, {"rows", k}};
      o.matrix = to_matrix(build_pair(p1, n), k);
      o.text = matrix_text(*o.matrix);
      return o;
    };
  });

  const auto binary_op = [&](const char* name, const char* help,
                             std::function<RiordanPair(const RiordanPair&, const RiordanPair&)> op) {
    auto* cmd = app.add_subcommand(name, help);
    add_pair(cmd, p1, "a-");
    add_pair(cmd, p2, "b-");
    cmd->callback([&, op] {
      action = [&, op](std::size_t n, std::size_t k) {
        const RiordanPair r = op(build_pair(p1, n), build_pair(p2, n));
        Outcome o;
        o.body = {{"result", to_json(r)}, {"order", n}};
        o.matrix = to_matrix(r, k);
        return o;
      };
    });
  };
  binary_op("mul", "product A B", multiply);
  binary_op("conj", "conjugate B^{-1} A B", conjugate);
  binary_op("comm", "commutator A^{-1} B^{-1} A B", commutator);

  auto* inv = app.add_subcommand("inv", "inverse pair");
  add_pair(inv, p1);
  inv->callback([&] {
    action = [&](std::size_t n, std::size_t k) {
      const RiordanPair p = build_pair(p1, n);
      const RiordanPair r = inverse(p);
      require_verified(multiply(p, r) == RiordanPair::identity(n), "inverse");
      Outcome o;
      o.body = verified({{"result", to_json(r)}, {"order", n}});
      o.matrix = to_matrix(r, k);
      return o;
    };
  });

  auto* check = app.add_subcommand("check", "boolean properties");
  check->require_subcommand(1);
  check->fallthrough();
  const auto property = [&](const char* name, std::function<bool(const RiordanPair&)> test) {
    auto* cmd = check->add_subcommand(name);
    add_pair(cmd, p1);
    cmd->callback([&, name, test] {
      action = [&, name, test](std::size_t n, std::size_t) {
        const bool value = test(build_pair(p1, n));
        Outcome o;
        o.body = {{"property", name}, {"value", value}};
        o.text = value ? "true\n" : "false\n";
        return o;
      };
    });
  };
  property("involution", is_involution);
  property("pseudo-involution", is_pseudo_involution);
  property("commutator-subgroup", in_commutator_subgroup);

  auto* diag = check->add_subcommand("diagonal", "main-diagonal pattern");
  add_pair(diag, p1);
  diag->callback([&] {
    action = [&](std::size_t n, std::size_t k) {
      const RiordanPair p = build_pair(p1, n);
      Json entries = Json::array();
      for (std::size_t i = 0; i < k; ++i) entries.push_back(diagonal_entry(p, i).to_string());
      Outcome o;
      o.body = {{"pattern", std::string(to_string(diagonal_pattern(p)))}, {"diagonal", entries}};
      return o;
    };
  });

  auto* member = check->add_subcommand("subgroup", "membership in a tagged subgroup");
  member->add_option("--tag", tag_text, "subgroup tag")->required();
  add_pair(member, p1);
  member->callback([&] {
    action = [&](std::size_t n, std::size_t) {
      const SubgroupTag tag = parse_subgroup_tag(tag_text, n);
      const RiordanPair p = build_pair(p1, n);
      const bool in = is_member(tag, p);
      Outcome o;
      o.body = {{"tag", to_string(tag)}, {"member", in}};
      o.body["involution"] = in ? Json(is_subgroup_involution(tag, p)) : Json(nullptr);
      return o;
    };
  });

  auto* classify = app.add_subcommand("classify-involution", "conjugacy class of an involution");
  add_pair(classify, p1);
  classify->callback([&] {
    action = [&](std::size_t n, std::size_t) {
      const RiordanPair p = build_pair(p1, n);
      const InvolutionClass c = classify_involution(p);
      Outcome o;
      o.body = {{"kind", std::string(to_string(c.kind))}, {"sign", c.sign}};
      if (c.witness) {
        require_verified(conjugate(p, c.witness->conjugator) == c.witness->target, "involution witness");
        o.body["witness"] = to_json(*c.witness);
        o.body["verified"] = true;
      }
      if (c.kind == InvolutionKind::NotInvolution) o.code = kInfeasible;
      return o;
    };
  });

  auto* witness = app.add_subcommand("witness", "witness constructions");
  witness->require_subcommand(1);
  witness->fallthrough();
  auto* two = witness->add_subcommand("two-involutions", "I1 I2 as a signed commutator");
  add_pair(two, p1, "a-");
  add_pair(two, p2, "b-");
  two->callback([&] {
    action = [&](std::size_t n, std::size_t) {
      const RiordanPair i1 = build_pair(p1, n);
      const RiordanPair i2 = build_pair(p2, n);
      const TwoInvolutionWitness w = two_involution_product_witness(i1, i2);
      require_verified(multiply(i1, i2) == scalar_multiple(Rational(w.sign), commutator(w.a, w.b)),
                       "two-involution witness");
      Outcome o;
      o.body = verified({{"sign", w.sign},
                         {"a", to_json(w.a)},
                         {"b", to_json(w.b)},
                         {"product_is_involution", w.product_is_involution}});
      return o;
    };
  });

  auto* sub = app.add_subcommand("subgroup-conjugator", "conjugate an involution to +-M inside a subgroup");
  sub->add_option("--tag", tag_text, "subgroup tag")->required();
  sub->add_option("--target-sign", target_sign, "1 for M, -1 for -M")->check(CLI::IsMember({-1, 1}));
  add_pair(sub, p1);
  sub->callback([&] {
    action = [&](std::size_t n, std::size_t) {
      const SubgroupTag tag = parse_subgroup_tag(tag_text, n);
      const RiordanPair p = build_pair(p1, n);
      const ConjugatorResult r = subgroup_conjugator(tag, p, target_sign);
      if (r.witness) {
        require_verified(conjugate(p, r.witness->conjugator) == r.witness->target &&
                             is_member(tag, r.witness->conjugator),
                         "subgroup conjugator");
      }
      if (r.outside_witness)
        require_verified(conjugate(p, r.outside_witness->conjugator) == r.outside_witness->target,
                         "unrestricted conjugator");
      Outcome o;
      o.body = verified(to_json(r));
      o.body["tag"] = to_string(tag);
      if (r.status != ConjugatorStatus::Found) o.code = kInfeasible;
      return o;
    };
  });

  auto* nf = app.add_subcommand("normal-form", "-t (1 + lambda t^p)^(-1/p)");
  nf->add_option("--p", p_value, "exponent p >= 1")->required();
  nf->add_option("--lambda", lambda_text, "rational lambda")->required();
  nf->callback([&] {
    action = [&](std::size_t n, std::size_t) {
      const NormalFormDescriptor d = normal_form_series(p_value, Rational::parse(lambda_text), n);
      Outcome o;
      o.body = to_json(d);
      o.text = series_text(d.series) + "\n";
      return o;
    };
  });

  auto* rev = app.add_subcommand("reversible", "is f conjugate to its compositional inverse");
  rev->add_option("--f", f_text, "series f with f(0) = 0")->required();
  rev->callback([&] {
    action = [&](std::size_t n, std::size_t) {
      const Fps f = expr::evaluate(f_text, n);
      const ReversibilityReport r = is_series_reversible(f);
      Outcome o;
      o.body = to_json(r);
      if (r.witness) {
        require_verified(reverses(lift<Cyclotomic>(f), *r.witness), "reversing witness");
        o.body["verified"] = true;
      }
      if (!r.reversible()) o.code = kInfeasible;
      return o;
    };
  });

  auto* fit = app.add_subcommand("normal-form-fit", "conjugate f (multiplier -1) to a normal form");
  fit->add_option("--f", f_text, "series f with f'(0) = -1")->required();
  fit->callback([&] {
    action = [&](std::size_t n, std::size_t) {
      const Fps f = expr::evaluate(f_text, n);
      const NormalFormFit r = conjugate_to_normal_form(f);
      Outcome o;
      o.body = to_json(r);
      if (r.descriptor) {
        const Fps& s = *r.descriptor->conjugator;
        require_verified(compose(revert(s), compose(f, s)) == r.descriptor->series, "normal-form conjugator");
        o.body["verified"] = true;
      } else {
        o.code = kInfeasible;
      }
      return o;
    };
  });

  auto* dec = app.add_subcommand("decompose", "write P as a product of two involutions");
  add_pair(dec, p1);
  dec->add_option("--u-g", uargs.g, "conjugator g (default 1)");
  dec->add_option("--u-f", uargs.f, "conjugator f (default t)");
  dec->callback([&] {
    action = [&](std::size_t n, std::size_t) {
      const RiordanPair p = build_pair(p1, n);
      const RiordanPair u = RiordanPair::make(expr::evaluate(uargs.g.empty() ? "1" : uargs.g, n),
                                              expr::evaluate(uargs.f.empty() ? "t" : uargs.f, n));
      Outcome o;
      if (!is_pseudo_involution(conjugate(p, u))) {
        o.body = {{"decomposable", false},
                  {"reason", "U^{-1} P U is not a pseudo-involution"}};
        o.code = kInfeasible;
        return o;
      }
      const StrongDecomposition d = strong_decompose(p, u);
      require_verified(is_involution(d.s) && is_involution(d.t) && multiply(d.s, d.t) == p,
                       "decomposition");
      o.body = verified({{"decomposable", true}, {"s", to_json(d.s)}, {"t", to_json(d.t)}});
      return o;
    };
  });

  std::vector<std::string> argv_store{"riordan"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kInputError;
  }

  try {
    if (rows_opt->count() == 0) settings.rows = std::min(settings.rows, settings.order + 1);
    if (settings.rows - 1 > settings.order)
      throw Error(ErrorCode::MatrixTooLarge, "rows K = " + std::to_string(settings.rows) +
                                                 " exceeds order N + 1 = " +
                                                 std::to_string(settings.order + 1));
    const std::string format = settings.format.empty() ? (interactive ? "text" : "json") : settings.format;
    const Outcome o = action(static_cast<std::size_t>(settings.order), static_cast<std::size_t>(settings.rows));
    out << render(o, format);
    return o.code;
  } catch (const expr::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace riordan::cli
