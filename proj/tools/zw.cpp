// Command-line front end: field invariants, zeta values, and the named checks.
// Exit codes: 0 success, 1 a check failed, 2 usage error, 3 data error.

#include <cstdlib>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "zw/conjecture.hpp"
#include "zw/errors.hpp"
#include "zw/report.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;
constexpr int kDataError = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string data_dir;
  zw::Precision bits = 256;
  double tol = 1e-8;
  std::uint64_t seed = 1;
  std::string format = "text";
  int jobs = 1;
  std::string field;
  std::optional<long> r;
};

std::string resolve_data_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("ZW_DATA_DIR"); env != nullptr && *env != '\0') return env;
  return ZW_DEFAULT_DATA_DIR;
}

zw::CheckConfig config_of(const Options& o) {
  zw::CheckConfig c;
  c.bits = o.bits;
  c.tol = o.tol;
  c.seed = o.seed;
  c.jobs = o.jobs;
  if (!o.field.empty()) c.field = o.field;
  c.r = o.r;
  return c;
}

zw::CheckContext load(const Options& o) {
  zw::CheckContext ctx = zw::load_context(resolve_data_dir(o.data_dir), config_of(o));
  if (!o.field.empty() && ctx.selected_fields().empty()) throw UsageError("unknown field: " + o.field);
  return ctx;
}

const zw::FieldRecord& require_field(const zw::CheckContext& ctx, const Options& o) {
  if (o.field.empty()) throw UsageError("--field is required");
  return *ctx.selected_fields().front();
}

int emit_items(const std::vector<zw::CheckItem>& items, const Options& o) {
  const zw::CheckConfig config = config_of(o);
  if (o.format == "json")
    std::cout << zw::render_json(items, config);
  else if (o.format == "csv")
    std::cout << zw::render_csv(items);
  else
    std::cout << zw::render_text(items);
  return zw::summarize(items).ok() ? kOk : kCheckFailed;
}

int cmd_field(const Options& o) {
  const zw::CheckContext ctx = load(o);
  const zw::FieldRecord& f = require_field(ctx, o);
  const zw::FieldInvariants& inv = f.inv;
  std::string unit;
  if (inv.unit) {
    const zw::Integer D = zw::quadratic_radicand(f.spec);
    unit = inv.unit->first.str() + " + " + inv.unit->second.str() + " * " +
           ((D % 4 + 4) % 4 == 1 ? "(1 + sqrt(" + D.str() + "))/2" : "sqrt(" + D.str() + ")");
  }
  if (o.format == "json") {
    nlohmann::ordered_json j;
    j["label"] = inv.label;
    std::vector<std::string> poly;
    for (const auto& c : f.spec.poly) poly.push_back(c.str());
    j["poly"] = poly;
    j["d"] = inv.d.str();
    j["r1"] = inv.sig.r1;
    j["r2"] = inv.sig.r2;
    j["h"] = inv.h.str();
    j["w"] = inv.w;
    j["regulator"] = inv.R.mid().to_string(30);
    j["fundamental_unit"] = inv.unit ? nlohmann::ordered_json(unit) : nlohmann::ordered_json(nullptr);
    j["sources"] = inv.sources;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "field      " << inv.label << "\n"
              << "d_F        " << inv.d.str() << "\n"
              << "signature  (" << inv.sig.r1 << ", " << inv.sig.r2 << ")\n"
              << "h          " << inv.h.str() << "\n"
              << "w          " << inv.w << "\n"
              << "regulator  " << inv.R.mid().to_string(30) << "\n";
    if (inv.unit) std::cout << "unit       " << unit << "\n";
    for (const auto& s : inv.sources) std::cout << "source     " << s << "\n";
    if (f.k_ingested) std::cout << "K-groups   ingested table\n";
  }
  return kOk;
}

zw::Ball parse_point(const std::string& text, zw::Precision bits) {
  try {
    if (text.find('/') != std::string::npos) return zw::Ball(zw::Rational(text), bits);
    return zw::Ball(zw::Real::parse(text, bits));
  } catch (const std::exception&) {
    throw UsageError("cannot parse s = " + text);
  }
}

int cmd_zeta(const Options& o, const std::string& s, const std::optional<long>& leading) {
  if (s.empty() == !leading.has_value()) throw UsageError("give exactly one of --s and --leading");
  const zw::CheckContext ctx = load(o);
  const zw::FieldRecord& f = require_field(ctx, o);
  const long d = f.inv.d.convert_to<long>();
  if (leading) {
    const zw::LaurentLeading z = zw::leading_term(d, *leading, ctx.precision());
    if (o.format == "json") {
      nlohmann::ordered_json j{{"field", f.spec.label}, {"r", *leading}, {"order", z.order},
                               {"leading", z.leading.mid().to_string(30)}, {"radius", z.leading.rad()}};
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "order    " << z.order << "\nleading  " << z.leading.mid().to_string(30) << "\nradius   "
                << z.leading.rad() << "\n";
    }
    return kOk;
  }
  const zw::Ball v = zw::dedekind_zeta(d, parse_point(s, o.bits), ctx.precision());
  if (o.format == "json") {
    nlohmann::ordered_json j{{"field", f.spec.label}, {"s", s}, {"value", v.mid().to_string(30)}, {"radius", v.rad()}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "value   " << v.mid().to_string(30) << "\nradius  " << v.rad() << "\n";
  }
  return kOk;
}

int cmd_checks(const Options& o, std::vector<std::string> names) {
  for (const auto& n : names)
    if (!zw::find_check(n)) throw UsageError("unknown check: " + n);
  if (names.empty())
    for (const auto& d : zw::check_registry()) names.push_back(d.name);
  const zw::CheckContext ctx = load(o);
  return emit_items(zw::run_checks(names, ctx), o);
}

void list_checks() {
  for (const auto& d : zw::check_registry()) std::cout << d.name << "  " << d.description << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zeta values of number rings: special values, Gamma factors and the supporting algebra"};
  app.require_subcommand(1);
  Options o;
  long r_flag = 0;
  app.add_option("--data-dir", o.data_dir, "directory with fields/ and kgroups/ (default: $ZW_DATA_DIR)");
  app.add_option("--prec", o.bits, "working precision in bits")->check(CLI::Range(64, 1 << 20));
  app.add_option("--tol", o.tol, "tolerance on |log2 ratio - k|")->check(CLI::Range(0.0, 0.5));
  app.add_option("--seed", o.seed, "seed for the property sweeps");
  app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--jobs", o.jobs, "worker threads")->check(CLI::Range(1, 256));
  app.add_option("--field", o.field, "field label, e.g. Q_sqrt-5");
  CLI::Option* r_opt = app.add_option("--r", r_flag, "restrict checks to one integer r");

  CLI::App* field = app.add_subcommand("field", "print the invariants of a field");
  CLI::App* zeta = app.add_subcommand("zeta", "evaluate zeta_F(s) or its leading term at an integer");
  std::string s_value;
  long leading_r = 0;
  zeta->add_option("--s", s_value, "real point, decimal or p/q");
  CLI::Option* leading_opt = zeta->add_option("--leading", leading_r, "integer r for the leading Laurent term");
  CLI::App* verify = app.add_subcommand("verify", "run named checks");
  std::vector<std::string> names;
  verify->add_option("checks", names, "check names (see --list)");
  bool list = false;
  verify->add_flag("--list", list, "list the registered checks");
  CLI::App* report = app.add_subcommand("report", "run every registered check");
  bool all = false;
  report->add_flag("--all", all, "run every check (the default)");
  for (CLI::App* sub : {field, zeta, verify, report}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  if (r_opt->count() > 0) o.r = r_flag;

  try {
    if (*field) return cmd_field(o);
    if (*zeta) return cmd_zeta(o, s_value, leading_opt->count() > 0 ? std::optional<long>(leading_r) : std::nullopt);
    if (*verify) {
      if (list) {
        list_checks();
        return kOk;
      }
      if (names.empty()) throw UsageError("name at least one check, or use report");
      return cmd_checks(o, names);
    }
    return cmd_checks(o, {});
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const zw::ParseError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kDataError;
  } catch (const zw::MissingDataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kDataError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCheckFailed;
  }
}
