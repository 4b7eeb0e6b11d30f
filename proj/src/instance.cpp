#include "medsel/instance.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace medsel {

Count Instance::total_size() const {
  Count t = 0;
  for (const MultisetSeq& p : players) t += p.size();
  return t;
}

Instance parse_instance(std::istream& in) {
  Instance inst;
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("missing header line");
  {
    std::istringstream hs(line);
    std::string ntok, ktok;
    hs >> ntok >> ktok;
    if (ntok.rfind("n=", 0) != 0 || ktok.rfind("k=", 0) != 0) {
      throw std::invalid_argument("bad instance header");
    }
    inst.n = std::stoll(ntok.substr(2));
    inst.k = std::stoi(ktok.substr(2));
  }
  if (inst.n < 1 || inst.k < 1) throw std::invalid_argument("bad instance header");
  for (int i = 0; i < inst.k; ++i) {
    if (!std::getline(in, line)) throw std::invalid_argument("missing player line");
    std::istringstream ls(line);
    std::string word;
    ls >> word;
    if (word != "player") throw std::invalid_argument("bad player line");
    std::string idtok;
    ls >> idtok;
    if (idtok.empty() || idtok.back() != ':') throw std::invalid_argument("bad player line");
    const PlayerId id = static_cast<PlayerId>(std::stoi(idtok.substr(0, idtok.size() - 1)));
    std::vector<Value> vals;
    Value v;
    while (ls >> v) vals.push_back(v);
    inst.players.emplace_back(std::move(vals), id);
  }
  return inst;
}

Instance parse_instance_text(const std::string& text) {
  std::istringstream in(text);
  return parse_instance(in);
}

std::string format_instance(const Instance& inst) {
  std::ostringstream os;
  os << "n=" << inst.n << " k=" << inst.k << '\n';
  for (const MultisetSeq& p : inst.players) {
    os << "player " << p.owner() << ':';
    for (Value v : p.values()) os << ' ' << v;
    os << '\n';
  }
  return os.str();
}

Instance load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open instance file: " + path);
  return parse_instance(in);
}

void save_instance_file(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  out << format_instance(inst);
}

std::uint64_t Rng::next() {
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("empty range");
  const std::uint64_t limit = bound * ((~std::uint64_t{0}) / bound);
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return x % bound;
}

std::int64_t Rng::range(std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
}

Count Rng::log_uniform(Count cap) {
  if (cap <= 1) return 1;
  const int top = ceil_log2(static_cast<std::uint64_t>(cap));
  while (true) {
    const int exp = static_cast<int>(below(static_cast<std::uint64_t>(top) + 1));
    const Count lo = Count{1} << exp;
    const Count hi = std::min(cap, (Count{1} << (exp + 1)) - 1);
    if (lo > cap) continue;
    return range(lo, hi);
  }
}

Instance gen_instance(std::uint64_t seed, Count n, int k, GenMode mode, const Ratio& c) {
  if (n < 2 || k < 1) throw std::invalid_argument("need n >= 2 and k >= 1");
  Rng rng(seed * 0x100000001b3ULL + 0x517cc1b727220a95ULL);
  Instance inst;
  inst.n = n;
  inst.k = k;

  if (mode == GenMode::kMultiset) {
    for (int i = 1; i <= k; ++i) {
      const Count size = rng.log_uniform(n * n);
      std::vector<Value> vals;
      vals.reserve(static_cast<std::size_t>(size));
      for (Count j = 0; j < size; ++j) vals.push_back(rng.range(1, n));
      inst.players.emplace_back(std::move(vals), static_cast<PlayerId>(i));
    }
    return inst;
  }

  // kDisjointDense: pick a subset of [n] of size >= c*n, split it up.
  const Count floor_size = std::max<Count>((c.num * n + c.den - 1) / c.den, k);
  if (floor_size > n) throw std::invalid_argument("infeasible density");
  const Count subset = rng.range(floor_size, n);

  std::vector<Value> pool(static_cast<std::size_t>(n));
  for (Count i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i + 1;
  for (Count i = 0; i < subset; ++i) {
    const Count j = i + static_cast<Count>(rng.below(static_cast<std::uint64_t>(n - i)));
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
  }

  std::vector<std::vector<Value>> parts(static_cast<std::size_t>(k));
  for (Count i = 0; i < subset; ++i) {
    // Everyone gets one card first, the rest land uniformly.
    const std::size_t who = i < k ? static_cast<std::size_t>(i)
                                  : static_cast<std::size_t>(rng.below(k));
    parts[who].push_back(pool[static_cast<std::size_t>(i)]);
  }
  for (int i = 0; i < k; ++i) {
    inst.players.emplace_back(std::move(parts[static_cast<std::size_t>(i)]),
                              static_cast<PlayerId>(i + 1));
  }
  return inst;
}

}  // namespace medsel
