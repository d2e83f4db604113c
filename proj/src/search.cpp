#include "detf/search.hpp"

#include <algorithm>
#include <functional>
#include <istream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "detf/equiv.hpp"
#include "detf/kernels.hpp"
#include "detf/paley.hpp"

namespace detf {

namespace {

void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(std::max(jobs, 1), count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr err;
  std::mutex mu;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += workers) fn(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!err) err = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

void require_even(int n) {
  if (n < 2 || n % 2) fail(ErrorKind::Unsupported, "n must be even and positive");
}

using Key = unsigned __int128;

struct KeyHash {
  std::size_t operator()(Key k) const noexcept {
    std::uint64_t lo = static_cast<std::uint64_t>(k), hi = static_cast<std::uint64_t>(k >> 64);
    std::uint64_t h = lo * 0x9E3779B97F4A7C15ull ^ (hi + 0x632BE59BD9B4E019ull + (lo << 6) + (lo >> 2));
    h ^= h >> 31;
    return static_cast<std::size_t>(h * 0xBF58476D1CE4E5B9ull);
  }
};

// Autocorrelation values lie in [-n, n]; 7 bits each for up to 15 shifts.
Key pack(const std::int8_t* vals, int shifts, bool negate) {
  Key k = 0;
  for (int s = 0; s < shifts; ++s) k = (k << 7) | static_cast<unsigned>((negate ? -vals[s] : vals[s]) + 64);
  return k;
}

// Skew a from its free half a[1..n/2] (a[0] = 1, a[k] = a[n-k]).
SignVector skew_from_half(std::uint32_t half, int n) {
  std::vector<int> a(n, 1);
  for (int k = 1; k <= n / 2; ++k) {
    const int s = (half >> (k - 1)) & 1 ? -1 : 1;
    a[k] = s;
    a[n - k] = s;
  }
  return SignVector(std::move(a));
}

bool solution_less(const BlockSkewHadamard& x, const BlockSkewHadamard& y) {
  const auto ka = hex_encode(x.a()), kb = hex_encode(y.a());
  if (ka != kb) return ka < kb;
  return hex_encode(x.b()) < hex_encode(y.b());
}

}  // namespace

std::vector<int> negacyclic_autocorrelation(const SignVector& v) {
  const int n = static_cast<int>(v.size());
  std::vector<int> out(n, 0);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) out[k] += j + k < n ? v[j] * v[j + k] : -v[j] * v[j + k - n];
  return out;
}

std::vector<int> cyclic_autocorrelation(const SignVector& v) {
  const int n = static_cast<int>(v.size());
  std::vector<int> out(n, 0);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) out[k] += v[j] * v[(j + k) % n];
  return out;
}

SignVector nega_rotate(const SignVector& v) {
  const std::size_t n = v.size();
  std::vector<int> out(n);
  out[0] = -v[n - 1];
  for (std::size_t j = 1; j < n; ++j) out[j] = v[j - 1];
  return SignVector(std::move(out));
}

SignVector canonicalize_b(const SignVector& v) {
  // +1 < -1: compare by the flipped entries.
  auto less = [](const SignVector& x, const SignVector& y) {
    for (std::size_t j = 0; j < x.size(); ++j)
      if (x[j] != y[j]) return x[j] > y[j];
    return false;
  };
  SignVector best = v, cur = v;
  for (std::size_t r = 1; r < 2 * v.size(); ++r) {
    cur = nega_rotate(cur);
    if (less(cur, best)) best = cur;
  }
  return best;
}

std::vector<BlockSkewHadamard> enumerate(int n, int jobs) {
  require_even(n);
  if (n > 32) fail(ErrorKind::Unsupported, "n > 32");
  const int shifts = n / 2 - 1;
  std::vector<BlockSkewHadamard> out;
  if (shifts == 0) {
    // n = 2: every skew a pairs with every b.
    for (std::uint32_t bb = 0; bb < 4; ++bb) {
      const SignVector b = SignVector::from_bits(bb, n);
      if (!(canonicalize_b(b) == b)) continue;
      out.emplace_back(skew_from_half(0, n), b);
      out.emplace_back(skew_from_half(1, n), b);
    }
    std::sort(out.begin(), out.end(), solution_less);
    return out;
  }

  // Index of skew a keyed by the negated autocorrelation vector.
  std::unordered_map<Key, std::vector<std::uint32_t>, KeyHash> index;
  {
    const std::uint32_t halves = std::uint32_t{1} << (n / 2);
    std::vector<std::uint32_t> words(halves);
    for (std::uint32_t h = 0; h < halves; ++h) words[h] = static_cast<std::uint32_t>(skew_from_half(h, n).to_bits());
    std::vector<std::int8_t> ac(static_cast<std::size_t>(halves) * shifts);
    kernels::negacyclic_autocorr(words.data(), halves, n, shifts, ac.data());
    for (std::uint32_t h = 0; h < halves; ++h) index[pack(&ac[h * shifts], shifts, true)].push_back(h);
  }

  const std::uint64_t total = std::uint64_t{1} << n;
  constexpr std::uint64_t kChunk = 1 << 14;
  const std::uint64_t chunks = (total + kChunk - 1) / kChunk;
  std::mutex mu;
  parallel_for(chunks, jobs, [&](std::size_t c) {
    const std::uint64_t lo = c * kChunk, hi = std::min(total, lo + kChunk);
    std::vector<std::uint32_t> words(hi - lo);
    for (std::uint64_t x = lo; x < hi; ++x) words[x - lo] = static_cast<std::uint32_t>(x);
    std::vector<std::int8_t> ac(words.size() * shifts);
    kernels::negacyclic_autocorr(words.data(), words.size(), n, shifts, ac.data());
    std::vector<BlockSkewHadamard> local;
    for (std::size_t i = 0; i < words.size(); ++i) {
      auto it = index.find(pack(&ac[i * shifts], shifts, false));
      if (it == index.end()) continue;
      const SignVector b = SignVector::from_bits(words[i], n);
      if (!(canonicalize_b(b) == b)) continue;
      for (std::uint32_t h : it->second) local.emplace_back(skew_from_half(h, n), b);
    }
    if (!local.empty()) {
      std::lock_guard lock(mu);
      out.insert(out.end(), local.begin(), local.end());
    }
  });
  std::sort(out.begin(), out.end(), solution_less);
  return out;
}

std::vector<BlockSkewHadamard> enumerate_naive(int n) {
  require_even(n);
  if (n > 16) fail(ErrorKind::Unsupported, "naive enumeration limited to n <= 16");
  std::vector<BlockSkewHadamard> out;
  const IntMatrix target = IntMatrix::Identity(n, n) * (2 * n);
  for (std::uint32_t h = 0; h < (std::uint32_t{1} << (n / 2)); ++h) {
    const SignVector a = skew_from_half(h, n);
    const IntMatrix p = negacirculant_int(a);
    const IntMatrix ppt = p * p.transpose();
    for (std::uint64_t bb = 0; bb < (std::uint64_t{1} << n); ++bb) {
      const SignVector b = SignVector::from_bits(bb, n);
      if (!(canonicalize_b(b) == b)) continue;
      const IntMatrix q = negacirculant_int(b);
      if (IntMatrix(ppt + q * q.transpose()) == target) out.emplace_back(a, b);
    }
  }
  std::sort(out.begin(), out.end(), solution_less);
  return out;
}

std::vector<CirculantPair> enumerate_2circulant(int n) {
  require_even(n);
  if (n > 12) fail(ErrorKind::Unsupported, "2-circulant enumeration limited to n <= 12");
  std::vector<CirculantPair> out;
  const IntMatrix target = IntMatrix::Identity(n, n) * (2 * n);
  const IntMatrix two = IntMatrix::Identity(n, n) * 2;
  std::vector<SignVector> all;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) all.push_back(SignVector::from_bits(x, n));
  for (const auto& a : all) {
    const IntMatrix p = circulant_int(a);
    if (IntMatrix(p + p.transpose()) != two) continue;
    const IntMatrix ppt = p * p.transpose();
    for (const auto& b : all) {
      const IntMatrix q = circulant_int(b);
      if (IntMatrix(ppt + q * q.transpose()) == target) out.push_back({a, b});
    }
  }
  return out;
}

std::string SymmetryType::str() const {
  if (!classified) return "?";
  if (!tags) return "-";
  std::string s;
  auto add = [&](unsigned bit, const char* name) {
    if (!(tags & bit)) return;
    if (!s.empty()) s += "=";
    s += name;
  };
  add(kTagP, "P");
  add(kTagDP, "DP");
  add(kTagCDP, "CDP");
  return s;
}

SymmetryType SymmetryType::parse(const std::string& s) {
  SymmetryType t;
  if (s == "?") {
    t.classified = false;
    return t;
  }
  if (s == "-") return t;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, '=')) {
    if (part == "P")
      t.tags |= kTagP;
    else if (part == "DP")
      t.tags |= kTagDP;
    else if (part == "CDP")
      t.tags |= kTagCDP;
    else
      fail(ErrorKind::InvalidInput, "unknown symmetry type '" + part + "'");
  }
  return t;
}

BlockSkewHadamard SolutionRecord::solution() const { return {hex_decode(a_hex, n), hex_decode(b_hex, n)}; }

std::string format_record(const SolutionRecord& r) {
  return std::to_string(r.n) + "\t" + r.a_hex + "\t" + r.b_hex + "\t" + r.type.str() + "\t" + std::to_string(r.class_id);
}

SolutionRecord parse_record(const std::string& line) {
  std::vector<std::string> f;
  std::stringstream ss(line);
  std::string part;
  while (std::getline(ss, part, '\t')) f.push_back(part);
  if (f.size() != 5) fail(ErrorKind::InvalidInput, "record must have 5 tab-separated fields");
  SolutionRecord r;
  try {
    r.n = std::stoi(f[0]);
    r.class_id = std::stoi(f[4]);
  } catch (const std::exception&) {
    fail(ErrorKind::InvalidInput, "record has a non-numeric field");
  }
  r.a_hex = hex_encode(hex_decode(f[1], r.n));
  r.b_hex = hex_encode(hex_decode(f[2], r.n));
  r.type = SymmetryType::parse(f[3]);
  (void)r.solution();  // validates the pair
  return r;
}

std::vector<SolutionRecord> read_records(std::istream& in) {
  std::vector<SolutionRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    out.push_back(parse_record(line));
  }
  return out;
}

std::vector<PaleyReference> paley_references(int n) {
  std::vector<PaleyReference> refs;
  auto usable = [](int q) {
    const auto pp = prime_power(q);
    return pp && q % 4 == 3;
  };
  if (usable(2 * n - 1)) refs.push_back({kTagP, paley_gram(FiniteField(2 * n - 1))});
  if (n >= 4 && usable(n - 1)) {
    const FiniteField f(n - 1);
    refs.push_back({kTagDP, double_paley_gram(f)});
    refs.push_back({kTagCDP, conj_double_paley_gram(f)});
  }
  return refs;
}

SymmetryType paley_type(const GramMatrix& g, const std::vector<PaleyReference>& refs) {
  SymmetryType t;
  const std::string inv = anchor_invariant(g);
  for (const auto& ref : refs) {
    if (ref.gram.size() != g.size()) continue;
    // Both Grams are vertex-transitive, so differing anchor invariants already rule it out.
    if (anchor_invariant(ref.gram) != inv) continue;
    if (are_equivalent(ref.gram, g).equivalent) t.tags |= ref.tag;
  }
  return t;
}

std::vector<SolutionRecord> classify_solutions(int n, const std::vector<BlockSkewHadamard>& sols, int jobs) {
  require_even(n);
  std::vector<BlockSkewHadamard> sorted = sols;
  std::sort(sorted.begin(), sorted.end(), solution_less);
  std::vector<GramMatrix> grams;
  for (const auto& s : sorted) {
    if (s.n() != n) fail(ErrorKind::InvalidInput, "solution of the wrong size");
    grams.push_back(gram_M(s.matrix()));
  }
  std::vector<std::string> inv(grams.size());
  parallel_for(grams.size(), jobs, [&](std::size_t i) { inv[i] = anchor_invariant(grams[i]); });

  std::vector<std::size_t> reps;
  std::map<std::string, std::vector<std::size_t>> by_inv;
  for (std::size_t i = 0; i < grams.size(); ++i) {
    auto& bucket = by_inv[inv[i]];
    bool found = false;
    for (std::size_t r : bucket)
      if (are_equivalent(grams[r], grams[i]).equivalent) {
        found = true;
        break;
      }
    if (!found) {
      bucket.push_back(i);
      reps.push_back(i);
    }
  }

  const auto refs = paley_references(n);
  std::vector<SolutionRecord> out(reps.size());
  parallel_for(reps.size(), jobs, [&](std::size_t c) {
    const auto& s = sorted[reps[c]];
    out[c] = {n, hex_encode(s.a()), hex_encode(s.b()), paley_type(grams[reps[c]], refs), static_cast<int>(c) + 1};
  });
  return out;
}

std::vector<SolutionRecord> classify(int n, int jobs) { return classify_solutions(n, enumerate(n, jobs), jobs); }

}  // namespace detf
