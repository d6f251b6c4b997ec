#include "billiards/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "billiards/construct.hpp"
#include "billiards/exactla.hpp"
#include "billiards/monodromy.hpp"
#include "billiards/numtheory.hpp"
#include "billiards/oracle.hpp"
#include "billiards/polyfp.hpp"
#include "billiards/serialize.hpp"

namespace billiards::cli {

using nt::i64;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<i64> parse_list(const std::string& text) {
  std::vector<i64> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    try {
      out.push_back(std::stoll(item, &used));
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw UsageError("not an integer list: '" + text + "'");
  }
  if (out.empty()) throw UsageError("empty integer list");
  return out;
}

struct TupleArgs {
  i64 n = 0;
  std::string tuple;
  bool geometric = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--n", n, "modulus")->required();
    cmd->add_option("--tuple", tuple, "comma-separated entries, e.g. 2,2,2,4")->required();
    cmd->add_flag("--geometric", geometric, "also require a geometric polygon");
  }
  PolygonTuple get() const {
    return validate(parse_list(tuple), n, geometric ? Level::geometric : Level::algebraic);
  }
};

std::string join(const std::vector<i64>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

std::string mpz_row(const std::vector<mpz_class>& row) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < row.size(); ++i) os << (i ? " " : "") << row[i].get_str();
  os << ']';
  return os.str();
}

void print_matrix(std::ostream& out, const std::string& name, const IntMatrix& m) {
  out << name << ":\n";
  for (const auto& row : m.to_rows()) out << "  " << mpz_row(row) << '\n';
}

void print_classification(std::ostream& out, const ClassificationReport& r) {
  for (std::size_t i = 0; i < r.achievable.size(); ++i) {
    out << r.achievable[i].pretty() << ", order " << r.achievable[i].order.get_str() << ", witness "
        << r.witnesses[i].to_string() << '\n';
  }
  for (const auto& e : r.excluded) out << "excluded " << e.descriptor.pretty() << ": " << e.rule << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Monodromy groups of rational polygons, as k-gons mod n", "billiard-monodromy"};
  app.require_subcommand(1);
  app.fallthrough();

  bool as_json = false;
  oracle::Caps caps = oracle::default_caps();
  app.add_flag("--json", as_json, "print one JSON document");
  app.add_option("--max-span", caps.span, "cap on enumerated span vectors");
  app.add_option("--max-group", caps.group, "cap on permutation-group elements");

  std::function<void()> action;
  auto emit = [&](const json::json& j) { out << j.dump() << '\n'; };

  // group
  auto* group = app.add_subcommand("group", "monodromy group of a tuple (Smith normal form)");
  TupleArgs group_args;
  group_args.attach(group);
  bool group_verify = false;
  group->add_flag("--verify", group_verify, "cross-check with the permutation oracle");
  group->callback([&] {
    action = [&] {
      const PolygonTuple t = group_args.get();
      const GroupDescriptor g = group_verify ? certify(t, caps) : group_of(t);
      if (as_json) {
        json::json j = {{"tuple", json::tuple(t)}, {"descriptor", json::descriptor(g)},
                        {"trivial_action", g.trivial_action.value_or(false)}};
        if (group_verify) j["oracle"] = {{"ok", true}, {"group_order", json::big(g.order)}};
        emit(j);
        return;
      }
      out << g.pretty() << ", order " << g.order.get_str() << '\n';
      if (group_verify) out << "oracle: OK (|G|=" << g.order.get_str() << ")\n";
    };
  });

  // snf
  auto* snf = app.add_subcommand("snf", "Smith normal form of the circulant matrix");
  TupleArgs snf_args;
  snf_args.attach(snf);
  snf->callback([&] {
    action = [&] {
      const PolygonTuple t = snf_args.get();
      const IntMatrix c = circulant(t);
      const SnfResult r = smith_normal_form(c);
      if (as_json) {
        emit(json::snf(c, r));
        return;
      }
      print_matrix(out, "C", c);
      print_matrix(out, "U", r.U);
      print_matrix(out, "D", r.D);
      print_matrix(out, "V", r.V);
      out << "divisors: " << mpz_row(r.divisors) << '\n';
    };
  });

  // verify
  auto* verify = app.add_subcommand("verify", "structural checks at the permutation level");
  TupleArgs verify_args;
  verify_args.attach(verify);
  int verify_status = kOk;
  verify->callback([&] {
    action = [&] {
      const auto report = oracle::check_structure(verify_args.get(), caps);
      if (!report.all_passed()) verify_status = kDomainError;
      if (as_json) {
        emit(json::structure(report));
        return;
      }
      for (const auto& c : report.clauses) {
        out << (c.passed ? "PASS " : "FAIL ") << c.name;
        if (!c.passed) out << ": " << c.detail;
        out << '\n';
      }
      out << "|G| = " << report.group_order << ", |N| = " << report.normal_order
          << ", action " << (report.action_trivial ? "trivial" : "nontrivial") << '\n';
    };
  });

  // factor
  auto* fac = app.add_subcommand("factor", "factor x^k - 1 over F_p");
  std::size_t fac_k = 0;
  i64 fac_p = 0;
  fac->add_option("--k", fac_k, "exponent")->required();
  fac->add_option("--p", fac_p, "prime")->required();
  fac->callback([&] {
    action = [&] {
      const auto fs = factor_xk_minus_1(fac_k, fac_p);
      if (as_json) {
        json::json j = json::factorization(fac_k, fac_p, fs);
        if (static_cast<i64>(fac_k) % fac_p != 0) j["coset_degrees"] = coset_degrees(fac_k, fac_p);
        emit(j);
        return;
      }
      for (const auto& f : fs) {
        out << f.poly.to_string();
        if (f.multiplicity > 1) out << " ^" << f.multiplicity;
        out << '\n';
      }
    };
  });

  // enumerate
  auto* en = app.add_subcommand("enumerate", "group every k-gon mod n by monodromy group");
  std::size_t en_k = 0;
  i64 en_n = 0;
  bool en_algebraic = false;
  std::uint64_t en_limit = 1000000;
  en->add_option("--k", en_k, "number of vertices")->required();
  en->add_option("--n", en_n, "modulus")->required();
  en->add_flag("--algebraic", en_algebraic, "enumerate algebraic rather than geometric polygons");
  en->add_option("--limit", en_limit, "cap on candidate tuples");
  en->callback([&] {
    action = [&] {
      if (en_k < 2 || en_n < 1) throw Error(ErrorKind::InvalidArgument, "need k >= 2 and n >= 1");
      const i64 range = en_algebraic ? en_n : 2 * en_n;
      std::uint64_t space = 1;
      for (std::size_t i = 0; i + 1 < en_k; ++i) {
        if (space > en_limit) break;
        space *= static_cast<std::uint64_t>(range);
      }
      if (space > en_limit) throw CapExceededError("enumeration exceeds limit " + std::to_string(en_limit), 0);
      const Level level = en_algebraic ? Level::algebraic : Level::geometric;
      const i64 target = en_algebraic ? 0 : static_cast<i64>(en_k - 2) * en_n;
      struct Bucket {
        GroupDescriptor g;
        std::uint64_t count = 0;
        std::vector<i64> witness;
      };
      std::vector<Bucket> buckets;
      std::uint64_t total = 0;
      std::vector<i64> a(en_k, 0);
      while (true) {
        i64 s = 0;
        for (std::size_t i = 0; i + 1 < en_k; ++i) s += a[i];
        a[en_k - 1] = en_algebraic ? nt::mod(-s, en_n) : target - s;
        if (!check(a, en_n, level)) {
          GroupDescriptor g = group_of(validate(a, en_n, level));
          auto it = std::find_if(buckets.begin(), buckets.end(), [&](const Bucket& b) { return b.g == g; });
          if (it == buckets.end()) {
            buckets.push_back({g, 0, a});
            it = buckets.end() - 1;
          }
          ++it->count;
          ++total;
        }
        std::size_t i = 0;
        while (i + 1 < en_k && ++a[i] == range) a[i++] = 0;
        if (i + 1 == en_k) break;
      }
      std::sort(buckets.begin(), buckets.end(), [](const Bucket& x, const Bucket& y) { return x.g.deltas > y.g.deltas; });
      if (as_json) {
        json::json groups = json::json::array();
        for (const auto& b : buckets) {
          groups.push_back({{"descriptor", json::descriptor(b.g)},
                            {"count", b.count},
                            {"witness", {{"n", en_n}, {"entries", b.witness}}}});
        }
        emit({{"k", en_k}, {"n", en_n}, {"level", en_algebraic ? "algebraic" : "geometric"},
              {"total", total}, {"groups", groups}});
        return;
      }
      for (const auto& b : buckets) {
        out << b.g.pretty() << ": " << b.count << " tuples, first [" << join(b.witness) << "]\n";
      }
      out << "total " << total << '\n';
    };
  });

  // classify-prime
  auto* cp = app.add_subcommand("classify-prime", "every group of a k-gon mod a prime p > k");
  std::size_t cp_k = 0;
  i64 cp_p = 0;
  cp->add_option("--k", cp_k, "number of vertices")->required();
  cp->add_option("--p", cp_p, "prime modulus")->required();
  cp->callback([&] {
    action = [&] {
      const auto r = classify_prime(cp_k, cp_p);
      if (as_json) {
        emit(json::classification(r));
      } else {
        print_classification(out, r);
      }
    };
  });

  // classify-triangle
  auto* ct = app.add_subcommand("classify-triangle", "every group of a triangle mod n");
  i64 ct_n = 0;
  ct->add_option("--n", ct_n, "modulus")->required();
  ct->callback([&] {
    action = [&] {
      const auto r = classify_triangles(ct_n);
      if (as_json) {
        emit(json::classification(r));
      } else {
        print_classification(out, r);
      }
    };
  });

  // construct
  auto* cons = app.add_subcommand("construct", "a k-gon mod p with group C_p^(k-d) : C_k");
  std::size_t cons_k = 0;
  i64 cons_p = 0;
  int cons_d = 0;
  cons->add_option("--k", cons_k, "number of vertices")->required();
  cons->add_option("--p", cons_p, "prime modulus")->required();
  cons->add_option("--d", cons_d, "degree of gcd(f, x^k - 1)")->required();
  cons->callback([&] {
    action = [&] {
      const PolygonTuple t = construct_prime_case(cons_k, cons_p, cons_d);
      const GroupDescriptor g = group_of(t);
      if (as_json) {
        emit({{"tuple", json::tuple(t)}, {"descriptor", json::descriptor(g)}});
        return;
      }
      out << t.to_string() << '\n' << g.pretty() << ", order " << g.order.get_str() << '\n';
    };
  });

  auto print_tuple = [&](const PolygonTuple& t) {
    if (as_json) {
      emit({{"tuple", json::tuple(t)}, {"descriptor", json::descriptor(group_of(t))}});
      return;
    }
    out << t.to_string() << '\n' << group_of(t).pretty() << '\n';
  };

  // combine
  auto* comb = app.add_subcommand("combine", "CRT of two algebraic polygons with coprime moduli");
  i64 comb_n1 = 0;
  i64 comb_n2 = 0;
  std::string comb_t1;
  std::string comb_t2;
  bool comb_coprime_k = false;
  comb->add_option("--n1", comb_n1, "first modulus")->required();
  comb->add_option("--tuple1", comb_t1, "first tuple")->required();
  comb->add_option("--n2", comb_n2, "second modulus")->required();
  comb->add_option("--tuple2", comb_t2, "second tuple")->required();
  comb->add_flag("--coprime-k", comb_coprime_k, "lift a k-gon and an l-gon with gcd(k, l) = 1 to kl-gons first");
  comb->callback([&] {
    action = [&] {
      const PolygonTuple t1 = algebraic(parse_list(comb_t1), comb_n1);
      const PolygonTuple t2 = algebraic(parse_list(comb_t2), comb_n2);
      print_tuple(comb_coprime_k ? combine_coprime_k(t1, t2) : combine_crt(t1, t2));
    };
  });

  // project
  auto* proj = app.add_subcommand("project", "reduce a polygon mod n to a proper factor n1");
  TupleArgs proj_args;
  proj_args.attach(proj);
  i64 proj_n1 = 0;
  proj->add_option("--n1", proj_n1, "target modulus")->required();
  proj->callback([&] { action = [&] { print_tuple(project(proj_args.get(), proj_n1)); }; });

  // lift
  auto* lif = app.add_subcommand("lift", "repeat a k-gon into an ell-gon");
  TupleArgs lift_args;
  lift_args.attach(lif);
  std::size_t lift_ell = 0;
  lif->add_option("--ell", lift_ell, "multiple of k")->required();
  lif->callback([&] { action = [&] { print_tuple(lift(lift_args.get(), lift_ell)); }; });

  // composite
  auto* compo = app.add_subcommand("composite", "decide whether N = C_deltas occurs for k-gons mod n");
  std::size_t compo_k = 0;
  i64 compo_n = 0;
  std::string compo_deltas;
  std::uint64_t compo_cap = 1000000;
  compo->add_option("--k", compo_k, "number of vertices")->required();
  compo->add_option("--n", compo_n, "modulus")->required();
  compo->add_option("--deltas", compo_deltas, "invariant factors of N, e.g. 35,5")->required();
  compo->add_option("--cap", compo_cap, "cap on tuples per prime power");
  compo->callback([&] {
    action = [&] {
      const auto d = composite_feasible(compo_k, compo_n, parse_list(compo_deltas), compo_cap);
      if (as_json) {
        emit(json::composite(d));
        return;
      }
      out << d.target.pretty() << ": ";
      if (d.feasible) {
        out << "feasible, witness " << d.witness->to_string() << '\n';
      } else {
        out << "infeasible (" << d.reason << ")\n";
      }
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help("", CLI::AppFormatMode::All);
    return kUsage;
  }

  try {
    if (action) action();
    return verify_status;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n' << app.help("", CLI::AppFormatMode::All);
    return kUsage;
  } catch (const CapExceededError& e) {
    err << e.what() << '\n';
    return kCapExceeded;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return kDomainError;
  }
}

}  // namespace billiards::cli
