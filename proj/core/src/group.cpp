#include "gqft/group.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "gqft/errors.hpp"

namespace gqft {

std::string_view to_string(Family f) {
  switch (f) {
    case Family::cyclic:
      return "cyclic";
    case Family::symmetric:
      return "symmetric";
    case Family::metacyclic:
      return "metacyclic";
  }
  return "?";
}

namespace {

int mod(long long a, long long n) {
  long long r = a % n;
  return static_cast<int>(r < 0 ? r + n : r);
}

int pow_mod(long long base, long long exp, long long m) {
  long long result = 1 % m;
  base = mod(base, m);
  while (exp > 0) {
    if (exp & 1) result = result * base % m;
    base = base * base % m;
    exp >>= 1;
  }
  return static_cast<int>(result);
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\n\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\n\r");
  return std::string(s.substr(b, e - b + 1));
}

int parse_int(std::string_view text, std::string_view what) {
  auto t = trim(text);
  int value = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty())
    throw EncodingError("cannot parse " + std::string(what) + " from '" + std::string(text) + "'");
  return value;
}

void validate_chain(const std::vector<int>& chain, int n) {
  if (chain.empty() || chain.back() != n)
    throw EncodingError("cyclic chain must end at the group order " + std::to_string(n));
  int prev = 1;
  for (int c : chain) {
    if (c <= prev || c % prev != 0)
      throw EncodingError("cyclic chain must be strictly increasing with each order dividing the next");
    prev = c;
  }
}

std::vector<int> resolve_chain(const std::vector<int>& requested, int n) {
  if (n == 1) {
    if (!requested.empty() && !(requested.size() == 1 && requested[0] == 1))
      throw EncodingError("trivial group has no proper chain");
    return {1};
  }
  std::vector<int> chain = requested.empty() ? default_cyclic_chain(n) : requested;
  validate_chain(chain, n);
  chain.insert(chain.begin(), 1);
  return chain;
}

// Z_n with tower 1 = Z_{c_0} < Z_{c_1} < ... < Z_{c_m} = Z_n, where Z_{c_i}
// is generated by n / c_i.
class CyclicGroup final : public Group {
 public:
  explicit CyclicGroup(GroupSpec spec) : spec_(std::move(spec)) {
    if (spec_.n < 1) throw EncodingError("cyclic group order must be positive");
    chain_ = resolve_chain(spec_.chain, spec_.n);
  }

  const GroupSpec& spec() const override { return spec_; }
  std::size_t order() const override { return static_cast<std::size_t>(spec_.n); }
  Element identity() const override { return {0}; }
  Element mul(const Element& g, const Element& h) const override {
    check(g);
    check(h);
    return {mod(static_cast<long long>(g[0]) + h[0], spec_.n)};
  }
  Element inverse(const Element& g) const override {
    check(g);
    return {mod(-static_cast<long long>(g[0]), spec_.n)};
  }
  void check(const Element& g) const override {
    if (g.size() != 1 || g[0] < 0 || g[0] >= spec_.n)
      throw EncodingError("invalid element encoding for " + spec_.id());
  }
  std::string format(const Element& g) const override {
    check(g);
    return std::to_string(g[0]);
  }
  Element parse(std::string_view text) const override {
    Element g{parse_int(text, "cyclic element")};
    check(g);
    return g;
  }
  std::vector<Element> elements() const override {
    std::vector<Element> out;
    for (int x = 0; x < spec_.n; ++x) out.push_back({x});
    return out;
  }
  int num_levels() const override { return static_cast<int>(chain_.size()) - 1; }
  int level_of(const Element& g) const override {
    check(g);
    for (int i = 0; i < static_cast<int>(chain_.size()); ++i)
      if (g[0] % (spec_.n / chain_[i]) == 0) return i;
    return num_levels();
  }
  std::vector<Element> transversal(int level) const override {
    if (level < 1 || level > num_levels()) throw DomainError("level out of range");
    int step = spec_.n / chain_[level];
    int index = chain_[level] / chain_[level - 1];
    std::vector<Element> out;
    for (int k = 0; k < index; ++k) out.push_back({k * step});
    return out;
  }
  std::vector<Element> generators() const override {
    std::vector<Element> out;
    for (int i = 1; i <= num_levels(); ++i) out.push_back({spec_.n / chain_[i]});
    return out;
  }
  std::vector<std::string> generator_names() const override {
    std::vector<std::string> out;
    for (auto& g : generators()) out.push_back(format(g));
    return out;
  }
  std::vector<int> cyclic_chain() const override { return chain_; }

 private:
  GroupSpec spec_;
  std::vector<int> chain_;
};

// S_n with tower S_1 < S_2 < ... < S_n; level l is S_{l+1}, the permutations
// fixing every point above l+1.
class SymmetricGroup final : public Group {
 public:
  explicit SymmetricGroup(GroupSpec spec) : spec_(std::move(spec)) {
    if (spec_.n < 1 || spec_.n > 10) throw EncodingError("symmetric degree must be in 1..10");
    order_ = 1;
    for (int k = 2; k <= spec_.n; ++k) order_ *= static_cast<std::size_t>(k);
  }

  const GroupSpec& spec() const override { return spec_; }
  std::size_t order() const override { return order_; }
  Element identity() const override {
    Element e(static_cast<std::size_t>(spec_.n));
    std::iota(e.begin(), e.end(), 0);
    return e;
  }
  Element mul(const Element& g, const Element& h) const override {
    check(g);
    check(h);
    Element out(g.size());
    for (std::size_t x = 0; x < g.size(); ++x) out[x] = g[static_cast<std::size_t>(h[x])];
    return out;
  }
  Element inverse(const Element& g) const override {
    check(g);
    Element out(g.size());
    for (std::size_t x = 0; x < g.size(); ++x) out[static_cast<std::size_t>(g[x])] = static_cast<int>(x);
    return out;
  }
  void check(const Element& g) const override {
    if (static_cast<int>(g.size()) != spec_.n) throw EncodingError("permutation has wrong degree");
    std::vector<bool> seen(g.size(), false);
    for (int v : g) {
      if (v < 0 || v >= spec_.n || seen[static_cast<std::size_t>(v)])
        throw EncodingError("image array is not a permutation");
      seen[static_cast<std::size_t>(v)] = true;
    }
  }
  std::string format(const Element& g) const override {
    check(g);
    std::string out;
    std::vector<bool> done(g.size(), false);
    for (std::size_t start = 0; start < g.size(); ++start) {
      if (done[start] || g[start] == static_cast<int>(start)) continue;
      out += '(';
      std::size_t x = start;
      bool first = true;
      while (!done[x]) {
        done[x] = true;
        if (!first) out += ' ';
        out += std::to_string(x + 1);
        first = false;
        x = static_cast<std::size_t>(g[x]);
      }
      out += ')';
    }
    return out.empty() ? "()" : out;
  }
  // Cycle notation with 1-based points, e.g. "(1 2 3)(4 5)"; commas are
  // accepted as separators. Adjacent cycles are multiplied right-first.
  Element parse(std::string_view text) const override {
    std::string s = trim(text);
    Element result = identity();
    if (s.empty() || s == "e" || s == "id") return result;
    std::size_t pos = 0;
    while (pos < s.size()) {
      if (std::isspace(static_cast<unsigned char>(s[pos]))) {
        ++pos;
        continue;
      }
      if (s[pos] != '(') throw EncodingError("expected '(' in permutation '" + s + "'");
      auto close = s.find(')', pos);
      if (close == std::string::npos) throw EncodingError("unterminated cycle in '" + s + "'");
      std::string body = s.substr(pos + 1, close - pos - 1);
      std::replace(body.begin(), body.end(), ',', ' ');
      std::istringstream in(body);
      std::vector<int> points;
      std::string tok;
      while (in >> tok) {
        int v = parse_int(tok, "cycle point");
        if (v < 1 || v > spec_.n) throw EncodingError("cycle point out of range in '" + s + "'");
        if (std::find(points.begin(), points.end(), v - 1) != points.end())
          throw EncodingError("repeated point in cycle '" + s + "'");
        points.push_back(v - 1);
      }
      Element cycle = identity();
      for (std::size_t k = 0; k < points.size(); ++k)
        cycle[static_cast<std::size_t>(points[k])] = points[(k + 1) % points.size()];
      result = mul(result, cycle);
      pos = close + 1;
    }
    return result;
  }
  std::vector<Element> elements() const override {
    std::vector<Element> out;
    Element g = identity();
    do {
      out.push_back(g);
    } while (std::next_permutation(g.begin(), g.end()));
    return out;
  }
  int num_levels() const override { return spec_.n - 1; }
  int level_of(const Element& g) const override {
    check(g);
    for (int x = spec_.n - 1; x >= 1; --x)
      if (g[static_cast<std::size_t>(x)] != x) return x;
    return 0;
  }
  // {e, (N-1 N), (N-2 N), ..., (1 N)} with N = level + 1.
  std::vector<Element> transversal(int level) const override {
    if (level < 1 || level > num_levels()) throw DomainError("level out of range");
    int top = level;  // 0-based index of point N
    std::vector<Element> out{identity()};
    for (int k = top - 1; k >= 0; --k) out.push_back(transposition(k, top));
    return out;
  }
  std::vector<Element> generators() const override {
    std::vector<Element> out;
    for (int j = 0; j + 1 < spec_.n; ++j) out.push_back(transposition(j, j + 1));
    return out;
  }
  std::vector<std::string> generator_names() const override {
    std::vector<std::string> out;
    for (auto& g : generators()) out.push_back(format(g));
    return out;
  }

 private:
  Element transposition(int a, int b) const {
    Element t = identity();
    std::swap(t[static_cast<std::size_t>(a)], t[static_cast<std::size_t>(b)]);
    return t;
  }

  GroupSpec spec_;
  std::size_t order_ = 1;
};

// Z_q ⋉ Z_p = <a, b | a^p, b^q, b a b^-1 = a^r>. The tower is the cyclic
// chain of Z_p followed by one transverse step of index q with T = {b^k}.
class MetacyclicGroup final : public Group {
 public:
  explicit MetacyclicGroup(GroupSpec spec) : spec_(std::move(spec)) {
    const int p = spec_.p, q = spec_.q;
    if (p < 2 || q < 2) throw EncodingError("metacyclic parameters need p >= 2 and q >= 2");
    spec_.r = mod(spec_.r, p);
    if (std::gcd(spec_.r, p) != 1) throw EncodingError("action exponent r must be a unit mod p");
    if (pow_mod(spec_.r, q, p) != 1 % p) throw EncodingError("action exponent must satisfy r^q = 1 (mod p)");
    chain_ = resolve_chain(spec_.chain, p);
    rpow_.resize(static_cast<std::size_t>(q));
    for (int k = 0; k < q; ++k) rpow_[static_cast<std::size_t>(k)] = pow_mod(spec_.r, k, p);
  }

  const GroupSpec& spec() const override { return spec_; }
  std::size_t order() const override { return static_cast<std::size_t>(spec_.p) * static_cast<std::size_t>(spec_.q); }
  Element identity() const override { return {0, 0}; }
  Element mul(const Element& g, const Element& h) const override {
    check(g);
    check(h);
    long long x = g[0] + static_cast<long long>(rpow_[static_cast<std::size_t>(g[1])]) * h[0];
    return {mod(x, spec_.p), mod(static_cast<long long>(g[1]) + h[1], spec_.q)};
  }
  Element inverse(const Element& g) const override {
    check(g);
    int k = mod(-static_cast<long long>(g[1]), spec_.q);
    long long x = -static_cast<long long>(rpow_[static_cast<std::size_t>(k)]) * g[0];
    return {mod(x, spec_.p), k};
  }
  void check(const Element& g) const override {
    if (g.size() != 2 || g[0] < 0 || g[0] >= spec_.p || g[1] < 0 || g[1] >= spec_.q)
      throw EncodingError("invalid element encoding for " + spec_.id());
  }
  // "x,k" denotes a^x b^k.
  std::string format(const Element& g) const override {
    check(g);
    return std::to_string(g[0]) + "," + std::to_string(g[1]);
  }
  Element parse(std::string_view text) const override {
    auto comma = text.find(',');
    if (comma == std::string_view::npos) throw EncodingError("metacyclic element must be 'x,k'");
    Element g{parse_int(text.substr(0, comma), "normal exponent"), parse_int(text.substr(comma + 1), "transverse exponent")};
    check(g);
    return g;
  }
  std::vector<Element> elements() const override {
    std::vector<Element> out;
    for (int k = 0; k < spec_.q; ++k)
      for (int x = 0; x < spec_.p; ++x) out.push_back({x, k});
    return out;
  }
  int num_levels() const override { return static_cast<int>(chain_.size()); }
  int level_of(const Element& g) const override {
    check(g);
    if (g[1] != 0) return num_levels();
    for (int i = 0; i < static_cast<int>(chain_.size()); ++i)
      if (g[0] % (spec_.p / chain_[i]) == 0) return i;
    return static_cast<int>(chain_.size()) - 1;
  }
  std::vector<Element> transversal(int level) const override {
    if (level < 1 || level > num_levels()) throw DomainError("level out of range");
    std::vector<Element> out;
    if (level == num_levels()) {
      for (int k = 0; k < spec_.q; ++k) out.push_back({0, k});
      return out;
    }
    int step = spec_.p / chain_[static_cast<std::size_t>(level)];
    int index = chain_[static_cast<std::size_t>(level)] / chain_[static_cast<std::size_t>(level) - 1];
    for (int k = 0; k < index; ++k) out.push_back({k * step, 0});
    return out;
  }
  std::vector<Element> generators() const override {
    std::vector<Element> out;
    for (std::size_t i = 1; i < chain_.size(); ++i) out.push_back({spec_.p / chain_[i], 0});
    out.push_back({0, 1});
    return out;
  }
  std::vector<std::string> generator_names() const override {
    std::vector<std::string> out;
    for (std::size_t i = 1; i < chain_.size(); ++i) out.push_back("a^" + std::to_string(spec_.p / chain_[i]));
    out.push_back("b");
    return out;
  }
  std::vector<int> cyclic_chain() const override { return chain_; }

 private:
  GroupSpec spec_;
  std::vector<int> chain_;
  std::vector<int> rpow_;
};

}  // namespace

std::vector<int> default_cyclic_chain(int n) {
  std::vector<int> primes;
  int m = n;
  for (int d = 2; static_cast<long long>(d) * d <= m; ++d)
    while (m % d == 0) {
      primes.push_back(d);
      m /= d;
    }
  if (m > 1) primes.push_back(m);
  std::sort(primes.rbegin(), primes.rend());
  std::vector<int> chain;
  int acc = 1;
  for (int pr : primes) chain.push_back(acc *= pr);
  return chain;
}

GroupSpec GroupSpec::cyclic(int n, std::vector<int> chain) {
  GroupSpec s;
  s.family = Family::cyclic;
  s.n = n;
  s.chain = std::move(chain);
  return s;
}

GroupSpec GroupSpec::symmetric(int n) {
  GroupSpec s;
  s.family = Family::symmetric;
  s.n = n;
  return s;
}

GroupSpec GroupSpec::metacyclic(int p, int q, int r) {
  GroupSpec s;
  s.family = Family::metacyclic;
  s.p = p;
  s.q = q;
  s.r = r;
  s.n = p * q;
  return s;
}

GroupSpec GroupSpec::dihedral(int n) { return metacyclic(n, 2, n - 1); }

std::string GroupSpec::id() const {
  switch (family) {
    case Family::cyclic:
      return "Z" + std::to_string(n);
    case Family::symmetric:
      return "S" + std::to_string(n);
    case Family::metacyclic:
      if (q == 2 && p > 2 && mod(r, p) == p - 1) return "D" + std::to_string(p);
      return "M" + std::to_string(p) + "_" + std::to_string(q) + "_" + std::to_string(mod(r, p));
  }
  return "?";
}

GroupSpec group_spec_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("family") || !j["family"].is_string())
    throw EncodingError("group spec must be an object with a string 'family'");
  auto family = j["family"].get<std::string>();
  auto get_int = [&](const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer())
      throw EncodingError(std::string("group spec field '") + key + "' must be an integer");
    return j[key].get<int>();
  };
  std::vector<int> chain;
  if (j.contains("chain")) {
    if (!j["chain"].is_array()) throw EncodingError("'chain' must be an array of integers");
    for (auto& c : j["chain"]) {
      if (!c.is_number_integer()) throw EncodingError("'chain' must be an array of integers");
      chain.push_back(c.get<int>());
    }
  }
  GroupSpec spec;
  if (family == "cyclic") {
    spec = GroupSpec::cyclic(get_int("n"), chain);
  } else if (family == "symmetric") {
    spec = GroupSpec::symmetric(get_int("n"));
  } else if (family == "dihedral") {
    spec = GroupSpec::dihedral(get_int("n"));
    spec.chain = chain;
  } else if (family == "metacyclic") {
    spec = GroupSpec::metacyclic(get_int("p"), get_int("q"), get_int("r"));
    spec.chain = chain;
  } else {
    throw CapabilityError("unsupported group family '" + family + "'");
  }
  make_group(spec);  // validates parameters
  return spec;
}

nlohmann::json group_spec_to_json(const GroupSpec& spec) {
  nlohmann::json j;
  j["family"] = std::string(to_string(spec.family));
  if (spec.family == Family::metacyclic) {
    j["p"] = spec.p;
    j["q"] = spec.q;
    j["r"] = spec.r;
  } else {
    j["n"] = spec.n;
  }
  if (!spec.chain.empty()) j["chain"] = spec.chain;
  return j;
}

GroupSpec load_group_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw EncodingError("cannot open group spec '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("group spec '" + path + "': " + e.what());
  }
  return group_spec_from_json(j);
}

std::unique_ptr<Group> make_group(const GroupSpec& spec) {
  switch (spec.family) {
    case Family::cyclic:
      return std::make_unique<CyclicGroup>(spec);
    case Family::symmetric:
      return std::make_unique<SymmetricGroup>(spec);
    case Family::metacyclic:
      return std::make_unique<MetacyclicGroup>(spec);
  }
  throw CapabilityError("unsupported group family");
}

}  // namespace gqft
