#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "cobord/char_classes.hpp"
#include "cobord/chern_dold.hpp"
#include "cobord/json_io.hpp"
#include "cobord/parse.hpp"
#include "cobord/verify.hpp"

using namespace cobord;

namespace {

int default_degree() {
  if (const char* env = std::getenv("COBORD_DEGREE")) {
    int d = std::atoi(env);
    if (d >= 1) return d;
  }
  return 6;
}

struct Output {
  std::string path;
  std::ofstream file;
  std::ostream& stream() {
    if (path.empty()) return std::cout;
    if (!file.is_open()) {
      file.open(path);
      if (!file) throw Error("cannot open output file '" + path + "'");
    }
    return file;
  }
};

GradedSeries display(const GradedSeries& s) {
  GradedSeries r = s;
  if (std::find(r.vars().begin(), r.vars().end(), fgl_u()) != r.vars().end())
    r = r.substitute(fgl_u(), var_series("u"));
  if (std::find(r.vars().begin(), r.vars().end(), fgl_v()) != r.vars().end())
    r = r.substitute(fgl_v(), var_series("v"));
  if (std::find(r.vars().begin(), r.vars().end(), fgl_x()) != r.vars().end())
    r = r.substitute(fgl_x(), var_series("x"));
  return r;
}

const char* status_tag(CheckStatus s) {
  switch (s) {
    case CheckStatus::kPass: return "PASS";
    case CheckStatus::kWarn: return "WARN";
    default: return "FAIL";
  }
}

int emit_report(const Report& rep, const std::string& format, Output& out) {
  if (format == "json") {
    Json j{{"schema", 1}, {"command", "verify"}, {"suite", rep.suite}};
    Json checks = Json::array();
    int warns = 0, fails = 0;
    for (const auto& c : rep.checks) {
      if (c.status == CheckStatus::kWarn) ++warns;
      if (c.status == CheckStatus::kFail) ++fails;
      checks.push_back({{"name", c.name},
                        {"status", c.status == CheckStatus::kPass
                                       ? "pass"
                                       : (c.status == CheckStatus::kWarn ? "warn" : "fail")},
                        {"detail", c.detail}});
    }
    j["checks"] = checks;
    j["ok"] = rep.ok();
    out.stream() << j.dump(2) << "\n";
  } else {
    int passes = 0, warns = 0, fails = 0;
    for (const auto& c : rep.checks) {
      out.stream() << "[" << status_tag(c.status) << "] " << c.name;
      if (!c.detail.empty() &&
          (c.status != CheckStatus::kPass || c.detail.size() < 120))
        out.stream() << " -- " << c.detail;
      out.stream() << "\n";
      if (c.status == CheckStatus::kPass) ++passes;
      if (c.status == CheckStatus::kWarn) ++warns;
      if (c.status == CheckStatus::kFail) ++fails;
    }
    out.stream() << "suite " << rep.suite << ": " << passes << " passed, " << warns
                 << " warnings, " << fails << " failures\n";
  }
  return rep.ok() ? 0 : 1;
}

void emit_series(const std::string& command, const GradedSeries& s,
                 const std::string& format, Output& out, Json meta = Json::object()) {
  if (format == "json") {
    Json j{{"schema", 1}, {"command", command}};
    for (auto& [k, v] : meta.items()) j[k] = v;
    j["result"] = series_to_json(display(s));
    out.stream() << j.dump(2) << "\n";
  } else {
    out.stream() << display(s).str() << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cobord -- exact calculator for complex-cobordism characteristic classes"};
  app.require_subcommand(1);

  std::string format = "text", out_path, bundle_str, expr_str, kind = "Q",
              route_str = "direct", suite, eval_str, lambda_str, var_name_str = "t";
  int degree = default_degree(), r = 0, rank = 2, fiber_dim = 0, working_order = -1,
      floor = -2;
  bool diff = false;

  auto add_common = [&](CLI::App* c) {
    c->add_option("--format", format, "Output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    c->add_option("--out", out_path, "Write output to a file instead of stdout");
  };

  CLI::App* fgl_cmd = app.add_subcommand("fgl", "Print the formal group law tables");
  fgl_cmd->add_option("--degree", degree, "Truncation degree");
  add_common(fgl_cmd);

  CLI::App* class_cmd = app.add_subcommand("class", "Compute a characteristic class");
  class_cmd->add_option("--kind", kind, "Q, P, Phi or D")
      ->check(CLI::IsMember({"Q", "P", "Phi", "D"}));
  class_cmd->add_option("--r", r, "Class index");
  class_cmd->add_option("--bundle", bundle_str, "Bundle, e.g. \"O(1)+O(1)@CP2\"")
      ->required();
  class_cmd->add_option("--degree", degree, "Truncation degree");
  class_cmd->add_option("--route", route_str, "Q route: direct or via-phi")
      ->check(CLI::IsMember({"direct", "via-phi"}));
  class_cmd->add_option("--working-order", working_order,
                        "Working-order override for residue pushforwards");
  class_cmd->add_option("--floor", floor, "Most negative allowed r for Q classes");
  add_common(class_cmd);

  CLI::App* expand_cmd =
      app.add_subcommand("expand", "Universal expansion in Chern classes");
  expand_cmd->add_option("--kind", kind, "Q, P, Phi or D")
      ->check(CLI::IsMember({"Q", "P", "Phi", "D"}));
  expand_cmd->add_option("--r", r, "Class index");
  expand_cmd->add_option("--rank", rank, "Bundle rank")->required();
  expand_cmd->add_option("--degree", degree, "Truncation degree");
  expand_cmd->add_flag("--diff", diff, "Also print P_r - Q_r per degree");
  add_common(expand_cmd);

  CLI::App* push_cmd =
      app.add_subcommand("pushforward", "Trivial projectivization pushforward");
  push_cmd->add_option("--fiber-dim", fiber_dim, "Fiber dimension k")->required();
  push_cmd->add_option("--expr", expr_str, "Integrand, e.g. \"t^2 + b1*t*u\"")
      ->required();
  push_cmd->add_option("--var", var_name_str, "Fiber variable name (default t)");
  add_common(push_cmd);

  CLI::App* verify_cmd = app.add_subcommand("verify", "Run a verification suite");
  verify_cmd
      ->add_option("--suite", suite,
                   "examples, routes, sum-formula or riemann-roch")
      ->required()
      ->check(CLI::IsMember({"examples", "routes", "sum-formula", "riemann-roch"}));
  verify_cmd->add_option("--degree", degree, "Degree for the swept suites");
  add_common(verify_cmd);

  CLI::App* genus_cmd = app.add_subcommand("genus", "Evaluate a genus on a coefficient");
  genus_cmd->add_option("--eval", eval_str, "Coefficient-ring element, e.g. \"b1^2-b2\"")
      ->required();
  genus_cmd->add_option("--lambda", lambda_str,
                        "Comma-separated logarithm coefficients lambda_1,lambda_2,...")
      ->required();
  add_common(genus_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  Output out;
  out.path = out_path;
  try {
    if (app.got_subcommand(fgl_cmd)) {
      if (degree < 1) throw ParseError("fgl: --degree must be >= 1");
      FormalGroupLaw F = make_fgl(degree);
      if (format == "json") {
        Json a = Json::array();
        for (int i = 1; i <= degree; ++i)
          for (int j = 1; i + j <= degree; ++j) {
            CoeffPoly v = F.a(static_cast<unsigned>(i), static_cast<unsigned>(j));
            if (!v.is_zero()) a.push_back({{"i", i}, {"j", j}, {"coeff", coeff_to_json(v)}});
          }
        Json jout{{"schema", 1},
                  {"command", "fgl"},
                  {"degree", degree},
                  {"F", series_to_json(display(F.sum))},
                  {"g", series_to_json(display(F.log))},
                  {"g_inv", series_to_json(display(F.exp))},
                  {"chi", series_to_json(display(F.inverse))},
                  {"a", a}};
        out.stream() << jout.dump(2) << "\n";
      } else {
        out.stream() << "F = " << display(F.sum).str() << "\n";
        out.stream() << "g = " << display(F.log).str() << "\n";
        out.stream() << "g_inv = " << display(F.exp).str() << "\n";
        out.stream() << "chi = " << display(F.inverse).str() << "\n";
        for (int i = 1; i <= degree; ++i)
          for (int j = 1; i + j <= degree; ++j) {
            CoeffPoly v = F.a(static_cast<unsigned>(i), static_cast<unsigned>(j));
            if (!v.is_zero())
              out.stream() << "a[" << i << "][" << j << "] = " << v.str() << "\n";
          }
      }
      return 0;
    }

    if (app.got_subcommand(class_cmd)) {
      if (degree < 1) throw ParseError("class: --degree must be >= 1");
      int order = degree + 8;
      FormalGroupLaw F = make_fgl(order);
      auto [X, xi] = parse_bundle(bundle_str, F);
      if (degree > X.total_dim()) degree = X.total_dim();
      if (degree < 1) degree = 1;
      GradedSeries result;
      if (kind == "Q") {
        QRoute qr = route_str == "direct" ? QRoute::kDirect : QRoute::kViaPhi;
        int need = (xi.rank - std::min(r, 0)) + degree;
        if (need + 1 > F.order) F = make_fgl(need + 1);
        result = q_class(F, r, xi, &X, qr, degree, floor);
      } else if (kind == "P") {
        int need = degree + xi.rank + 2;
        if (working_order >= 0) need = std::max(need, working_order + 1);
        if (need > F.order) F = make_fgl(need);
        result = p_class(F, r, xi, &X, degree, PRoute::kAuto, working_order);
      } else if (kind == "Phi") {
        int need = (xi.rank - std::min(r, 0)) + degree;
        if (need + 1 > F.order) F = make_fgl(need + 1);
        if (r > xi.rank) {
          result = GradedSeries::zero(degree);
        } else {
          auto phis = phi_series(F, xi, &X, r, degree);
          result = X.reduce(phis[r]);
        }
      } else {
        result = d1_class(F, xi, &X, degree);
      }
      Json meta{{"kind", kind}, {"r", r},      {"bundle", bundle_str},
                {"space", X.str()}, {"degree", degree}};
      emit_series("class", result, format, out, meta);
      return 0;
    }

    if (app.got_subcommand(expand_cmd)) {
      if (degree < 1 || rank < 1) throw ParseError("expand: bad --degree or --rank");
      int order = std::max((rank - std::min(r, 0)) + degree + 1, degree + rank + 2);
      FormalGroupLaw F = make_fgl(order);
      ClassKind ck = kind == "Q"   ? ClassKind::kQ
                     : kind == "P" ? ClassKind::kP
                     : kind == "Phi" ? ClassKind::kPhi
                                     : ClassKind::kD;
      auto e = universal_expansion(F, ck, r, rank, degree);
      Json meta{{"kind", kind}, {"r", r}, {"rank", rank}, {"degree", degree}};
      if (format == "json") {
        Json j{{"schema", 1}, {"command", "expand"}};
        for (auto& [k, v] : meta.items()) j[k] = v;
        j["result"] = series_to_json(e.in_chern);
        if (diff && (kind == "Q" || kind == "P")) {
          auto d = universal_difference(F, r, rank, degree);
          j["p_minus_q"] = series_to_json(d.in_chern);
        }
        out.stream() << j.dump(2) << "\n";
      } else {
        out.stream() << e.in_chern.str() << "\n";
        if (diff && (kind == "Q" || kind == "P")) {
          auto d = universal_difference(F, r, rank, degree);
          for (int dd = 0; dd <= degree; ++dd) {
            GradedSeries comp = d.in_chern.homogeneous_part(dd);
            out.stream() << "P_" << r << " - Q_" << r << " [degree " << dd
                         << "] = " << comp.str() << "\n";
          }
        }
      }
      return 0;
    }

    if (app.got_subcommand(push_cmd)) {
      if (fiber_dim < 0) throw ParseError("pushforward: --fiber-dim must be >= 0");
      GradedSeries f = parse_series(expr_str);
      auto v = VarTable::instance().find(var_name_str);
      if (!v) throw ParseError("pushforward: fiber variable '" + var_name_str +
                               "' does not appear");
      GradedSeries result = trivial_proj_pushforward(f, *v, fiber_dim);
      Json meta{{"fiber_dim", fiber_dim}, {"expr", expr_str}, {"var", var_name_str}};
      emit_series("pushforward", result, format, out, meta);
      return 0;
    }

    if (app.got_subcommand(verify_cmd)) {
      FormalGroupLaw F = make_fgl(12);
      Report rep;
      if (suite == "examples")
        rep = verify_examples(F);
      else if (suite == "routes")
        rep = verify_routes(F, std::min(degree, 6));
      else if (suite == "sum-formula")
        rep = verify_sum_suite(F, std::min(degree, 5));
      else
        rep = verify_riemann_roch(F);
      return emit_report(rep, format, out);
    }

    if (app.got_subcommand(genus_cmd)) {
      CoeffPoly p = parse_coeff_poly(eval_str);
      Genus g;
      std::size_t pos = 0;
      while (pos <= lambda_str.size()) {
        auto comma = lambda_str.find(',', pos);
        std::string tok = lambda_str.substr(
            pos, comma == std::string::npos ? std::string::npos : comma - pos);
        g.lambda.push_back(CoeffPoly(Rational::parse(tok)));
        if (comma == std::string::npos) break;
        pos = comma + 1;
      }
      CoeffPoly v = apply_genus(p, g);
      if (format == "json") {
        Json j{{"schema", 1},
               {"command", "genus"},
               {"eval", eval_str},
               {"value", coeff_to_json(v)}};
        out.stream() << j.dump(2) << "\n";
      } else {
        out.stream() << v.str(g.symbol) << "\n";
      }
      return 0;
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
