#include "tropkit/plucker.hpp"

#include <algorithm>
#include <string>

#include "tropkit/io.hpp"

namespace tropkit {

namespace {

constexpr std::size_t kCheckCap = 8;
constexpr std::size_t kFlowCap = 4;

std::uint32_t bit(int i) { return 1u << i; }

void cap(const SubsetFunction& f) {
  if (f.n > kCheckCap) throw Error(Errc::TooLarge, "subset functions are capped at n = 8");
  if (f.values.size() != (std::size_t{1} << f.n)) throw Error(Errc::InvalidArgument, "subset function is not total");
}

std::optional<Rational> sum(const std::optional<Rational>& a, const std::optional<Rational>& b) {
  if (!a || !b) return std::nullopt;
  return Rational(*a + *b);
}

struct Grid {
  std::size_t n;
  std::vector<std::pair<std::size_t, std::size_t>> order;  // topological
  std::size_t id(std::size_t i, std::size_t j) const { return (i - 1) * n + (j - 1); }
};

struct FlowSearch {
  const GridFlowNet& net;
  Grid g;
  std::vector<int> div, inflow;
  std::optional<Rational> best;

  void run(std::size_t pos, const Rational& acc) {
    if (pos == g.order.size()) {
      if (!best || acc > *best) best = acc;
      return;
    }
    auto [i, j] = g.order[pos];
    std::size_t v = g.id(i, j);
    int need = inflow[v] + div[v];
    bool has_up = i > 1, has_right = j < g.n;
    int avail = int(has_up) + int(has_right);
    if (need < 0 || need > avail) return;
    for (int mask = 0; mask < 4; ++mask) {
      bool u = mask & 1, r = mask & 2;
      if ((u && !has_up) || (r && !has_right) || int(u) + int(r) != need) continue;
      Rational w = acc;
      if (u) {
        w += net.up[v];
        ++inflow[g.id(i - 1, j)];
      }
      if (r) {
        w += net.right[v];
        ++inflow[g.id(i, j + 1)];
      }
      run(pos + 1, w);
      if (u) --inflow[g.id(i - 1, j)];
      if (r) --inflow[g.id(i, j + 1)];
    }
  }
};

int lowest(std::uint32_t S) { return __builtin_ctz(S); }
int highest(std::uint32_t S) { return 31 - __builtin_clz(S); }

}  // namespace

bool is_interval(std::uint32_t S) {
  if (S == 0) return true;
  std::uint32_t t = S >> lowest(S);
  return (t & (t + 1)) == 0;
}

PluckerCheck is_tp(const SubsetFunction& f) {
  cap(f);
  int n = static_cast<int>(f.n);
  for (std::uint32_t A = 0; A < f.values.size(); ++A)
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
          if (A & (bit(i) | bit(j) | bit(k))) continue;
          auto lhs = sum(f[A | bit(i) | bit(k)], f[A | bit(j)]);
          auto r1 = sum(f[A | bit(i) | bit(j)], f[A | bit(k)]);
          auto r2 = sum(f[A | bit(j) | bit(k)], f[A | bit(i)]);
          if (!lhs || !r1 || !r2) continue;
          if (*lhs != std::max(*r1, *r2)) return PluckerCheck{false, A, i, j, k, -1};
        }
  return {};
}

static bool twice(const Rational& a, const Rational& b, const Rational& c) {
  Rational m = std::max({a, b, c});
  return int(a == m) + int(b == m) + int(c == m) >= 2;
}

PluckerCheck is_dmtp(const SubsetFunction& f) {
  cap(f);
  int n = static_cast<int>(f.n);
  for (std::uint32_t A = 0; A < f.values.size(); ++A) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
          if (A & (bit(i) | bit(j) | bit(k))) continue;
          auto a = sum(f[A | bit(i) | bit(k)], f[A | bit(j)]);
          auto b = sum(f[A | bit(i) | bit(j)], f[A | bit(k)]);
          auto c = sum(f[A | bit(j) | bit(k)], f[A | bit(i)]);
          if (a && b && c && !twice(*a, *b, *c)) return PluckerCheck{false, A, i, j, k, -1};
        }
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int k = j + 1; k < n; ++k)
          for (int l = k + 1; l < n; ++l) {
            if (A & (bit(i) | bit(j) | bit(k) | bit(l))) continue;
            auto x = sum(f[A | bit(i) | bit(k)], f[A | bit(j) | bit(l)]);
            auto y = sum(f[A | bit(i) | bit(j)], f[A | bit(k) | bit(l)]);
            auto z = sum(f[A | bit(j) | bit(k)], f[A | bit(i) | bit(l)]);
            if (x && y && z && !twice(*x, *y, *z)) return PluckerCheck{false, A, i, j, k, l};
          }
  }
  return {};
}

SubsetFunction flow_tp(const GridFlowNet& net) {
  std::size_t n = net.n;
  if (n == 0) throw Error(Errc::InvalidArgument, "grid size must be positive");
  if (n > kFlowCap) throw Error(Errc::TooLarge, "exhaustive normal-flow enumeration is capped at n = 4");
  Grid g{n, {}};
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j) g.order.emplace_back(i, j);
  std::stable_sort(g.order.begin(), g.order.end(), [](auto a, auto b) {
    return long(a.second) - long(a.first) < long(b.second) - long(b.first);
  });
  SubsetFunction f(n);
  for (std::uint32_t S = 0; S < f.values.size(); ++S) {
    FlowSearch fs{net, g, std::vector<int>(n * n, 0), std::vector<int>(n * n, 0), std::nullopt};
    std::size_t k = static_cast<std::size_t>(__builtin_popcount(S));
    for (std::size_t s = 1; s <= n; ++s)
      if (S >> (s - 1) & 1u) fs.div[g.id(n - s + 1, 1)] += 1;
    for (std::size_t t = 1; t <= k; ++t) fs.div[g.id(1, t)] -= 1;
    fs.run(0, Rational(0));
    f[S] = fs.best;
  }
  return f;
}

SubsetFunction restrict_to_intervals(const SubsetFunction& f) {
  SubsetFunction g(f.n);
  for (std::uint32_t S = 0; S < f.values.size(); ++S)
    if (is_interval(S)) g[S] = f[S];
  return g;
}

SubsetFunction reconstruct_from_intervals(const SubsetFunction& g) {
  cap(g);
  SubsetFunction f(g.n);
  std::vector<std::uint32_t> rest;
  for (std::uint32_t S = 0; S < g.values.size(); ++S) {
    if (is_interval(S)) {
      if (!g[S]) throw Error(Errc::InvalidArgument, "interval value missing for mask " + std::to_string(S));
      f[S] = g[S];
    } else {
      rest.push_back(S);
    }
  }
  auto rank = [](std::uint32_t S) {
    int total = 0;
    for (int b = 0; b < 32; ++b)
      if (S >> b & 1u) total += b;
    return std::make_tuple(__builtin_popcount(S), highest(S) - lowest(S), total);
  };
  std::stable_sort(rest.begin(), rest.end(), [&](std::uint32_t a, std::uint32_t b) { return rank(a) < rank(b); });
  for (std::uint32_t S : rest) {
    int i = lowest(S);
    int j = i + 1;
    while (S >> j & 1u) ++j;
    int k = j + 1;
    while (!(S >> k & 1u)) ++k;
    std::uint32_t A = S & ~(bit(i) | bit(k));
    auto r1 = sum(f[A | bit(i) | bit(j)], f[A | bit(k)]);
    auto r2 = sum(f[A | bit(j) | bit(k)], f[A | bit(i)]);
    const auto& d = f[A | bit(j)];
    if (!r1 || !r2 || !d) throw Error(Errc::Inconsistent, "reconstruction meets an undefined value at mask " + std::to_string(S));
    f[S] = Rational(std::max(*r1, *r2) - *d);
  }
  PluckerCheck c = is_tp(f);
  if (!c.ok) throw Error(Errc::Inconsistent, "reconstructed function violates the three-term relation", check_to_json(c));
  return f;
}

bool is_submodular(const SubsetFunction& f, bool on_intervals_only) {
  cap(f);
  for (std::uint32_t A = 0; A < f.values.size(); ++A)
    for (std::uint32_t B = A + 1; B < f.values.size(); ++B) {
      std::uint32_t U = A | B, I = A & B;
      if (on_intervals_only && !(is_interval(A) && is_interval(B) && is_interval(U) && is_interval(I))) continue;
      if (!f[A] || !f[B] || !f[U] || !f[I]) continue;
      if (*f[A] + *f[B] < *f[U] + *f[I]) return false;
    }
  return true;
}

nlohmann::json subset_function_to_json(const SubsetFunction& f) {
  nlohmann::json vals = nlohmann::json::object();
  for (std::uint32_t S = 0; S < f.values.size(); ++S) {
    std::string key = "0b";
    for (int b = static_cast<int>(f.n) - 1; b >= 0; --b) key += (S >> b & 1u) ? '1' : '0';
    if (f.n == 0) key += '0';
    vals[key] = f[S] ? rational_to_json(*f[S]) : nlohmann::json("-inf");
  }
  return {{"n", f.n}, {"values", vals}};
}

SubsetFunction subset_function_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("values")) throw Error(Errc::Parse, "subset function needs 'n' and 'values'");
  std::size_t n = j.at("n").get<std::size_t>();
  if (n > kCheckCap) throw Error(Errc::TooLarge, "subset functions are capped at n = 8");
  SubsetFunction f(n);
  for (const auto& [key, val] : j.at("values").items()) {
    std::uint32_t S = 0;
    if (key.rfind("0b", 0) == 0) {
      for (char c : key.substr(2)) {
        if (c != '0' && c != '1') throw Error(Errc::Parse, "bad subset key '" + key + "'");
        S = S * 2 + static_cast<std::uint32_t>(c - '0');
      }
    } else {
      S = static_cast<std::uint32_t>(std::stoul(key));
    }
    if (S >= f.values.size()) throw Error(Errc::Parse, "subset key out of range: '" + key + "'");
    if (val.is_string() && val.get<std::string>() == "-inf")
      f[S] = std::nullopt;
    else
      f[S] = rational_from_json(val);
  }
  return f;
}

nlohmann::json grid_to_json(const GridFlowNet& net) {
  nlohmann::json up = nlohmann::json::array(), right = nlohmann::json::array();
  for (std::size_t i = 0; i < net.n; ++i) {
    nlohmann::json ur = nlohmann::json::array(), rr = nlohmann::json::array();
    for (std::size_t j = 0; j < net.n; ++j) {
      ur.push_back(rational_to_json(net.up[i * net.n + j]));
      rr.push_back(rational_to_json(net.right[i * net.n + j]));
    }
    up.push_back(ur);
    right.push_back(rr);
  }
  return {{"n", net.n}, {"up", up}, {"right", right}};
}

GridFlowNet grid_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n")) throw Error(Errc::Parse, "grid needs 'n'");
  GridFlowNet net(j.at("n").get<std::size_t>());
  for (const char* name : {"up", "right"}) {
    if (!j.contains(name)) continue;
    const auto& m = j.at(name);
    if (!m.is_array() || m.size() != net.n) throw Error(Errc::Parse, std::string("'") + name + "' must be an n x n array");
    for (std::size_t i = 0; i < net.n; ++i) {
      if (!m[i].is_array() || m[i].size() != net.n) throw Error(Errc::Parse, std::string("'") + name + "' must be an n x n array");
      for (std::size_t k = 0; k < net.n; ++k) (std::string(name) == "up" ? net.up : net.right)[i * net.n + k] = rational_from_json(m[i][k]);
    }
  }
  return net;
}

nlohmann::json check_to_json(const PluckerCheck& c) {
  nlohmann::json j;
  j["ok"] = c.ok;
  if (!c.ok) {
    nlohmann::json A = nlohmann::json::array();
    for (int b = 0; b < 32; ++b)
      if (c.A >> b & 1u) A.push_back(b + 1);
    j["A"] = A;
    nlohmann::json idx = {c.i + 1, c.j + 1, c.k + 1};
    if (c.l >= 0) idx.push_back(c.l + 1);
    j["indices"] = idx;
  }
  return j;
}

}  // namespace tropkit
