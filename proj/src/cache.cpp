#include "kloost/cache.hpp"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <mutex>
#include <random>

namespace kloost {

namespace {

constexpr char kMagic[4] = {'K', 'L', 'S', 'C'};

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

template <class U>
void put_le(std::string& out, U v) {
  for (std::size_t i = 0; i < sizeof(U); ++i) out.push_back(static_cast<char>((static_cast<std::uint64_t>(v) >> (8 * i)) & 0xff));
}

class Reader {
 public:
  Reader(const std::string& buf, std::size_t pos = 0) : buf_(buf), pos_(pos) {}
  template <class U>
  bool get(U& v) {
    if (buf_.size() - pos_ < sizeof(U)) return false;
    std::uint64_t x = 0;
    for (std::size_t i = 0; i < sizeof(U); ++i) x |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf_[pos_ + i])) << (8 * i);
    v = static_cast<U>(x);
    pos_ += sizeof(U);
    return true;
  }
  bool get_bytes(std::string& s, std::size_t n) {
    if (buf_.size() - pos_ < n) return false;
    s.assign(buf_, pos_, n);
    pos_ += n;
    return true;
  }
  std::size_t pos() const { return pos_; }
  bool done() const { return pos_ == buf_.size(); }

 private:
  const std::string& buf_;
  std::size_t pos_;
};

std::string key_str(const SumKey& k) {
  return k.multiplier + "(m=" + std::to_string(k.m) + ",n=" + std::to_string(k.n) + ",c=" + std::to_string(k.c) + ")";
}

std::string encode(const ExpSum& s) {
  std::string p;
  const SumKey& k = s.key();
  put_le<std::uint32_t>(p, static_cast<std::uint32_t>(k.multiplier.size()));
  p += k.multiplier;
  put_le<std::int64_t>(p, k.m);
  put_le<std::int64_t>(p, k.n);
  put_le<std::int64_t>(p, k.c);
  put_le<std::int64_t>(p, s.summands());
  put_le<std::uint64_t>(p, s.terms().size());
  for (const auto& t : s.terms()) {
    put_le<std::int64_t>(p, t.phase.num());
    put_le<std::int64_t>(p, t.phase.den());
    put_le<std::int64_t>(p, t.weight);
  }
  return p;
}

std::optional<ExpSum> decode(const std::string& payload) {
  Reader r(payload);
  std::uint32_t len;
  SumKey k;
  std::int64_t summands;
  std::uint64_t count;
  if (!r.get(len) || !r.get_bytes(k.multiplier, len)) return std::nullopt;
  if (!r.get(k.m) || !r.get(k.n) || !r.get(k.c) || !r.get(summands) || !r.get(count)) return std::nullopt;
  if (count > payload.size() / 24) return std::nullopt;
  std::vector<ExpSum::Term> terms;
  terms.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    std::int64_t num, den, w;
    if (!r.get(num) || !r.get(den) || !r.get(w)) return std::nullopt;
    if (den <= 0 || num < 0 || num >= den) return std::nullopt;
    terms.push_back({RationalPhase(num, den), w});
  }
  if (!r.done()) return std::nullopt;
  return ExpSum(std::move(terms), k, summands);
}

std::string header() {
  std::string h(kMagic, 4);
  put_le<std::uint32_t>(h, SumCache::kVersion);
  return h;
}

}  // namespace

SumCache::SumCache(std::filesystem::path path) : path_(std::move(path)) { load(); }

std::filesystem::path SumCache::default_path() {
  if (const char* env = std::getenv("KLOOST_CACHE"); env && *env) return env;
  const char* home = std::getenv("HOME");
  return std::filesystem::path(home ? home : ".") / ".cache" / "kloost" / "sums.bin";
}

void SumCache::load() {
  std::unique_lock lock(mu_);
  records_.clear();
  corruption_.clear();
  std::ifstream in(path_, std::ios::binary);
  if (!in) return;
  std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (buf.empty()) return;
  Reader r(buf);
  std::string magic;
  std::uint32_t version;
  if (!r.get_bytes(magic, 4) || magic != std::string(kMagic, 4)) {
    corruption_.push_back(path_.string() + ": bad magic, file ignored");
    return;
  }
  if (!r.get(version)) {
    corruption_.push_back(path_.string() + ": truncated header");
    return;
  }
  if (version != kVersion)
    throw CacheVersionError("cache " + path_.string() + " has format version " + std::to_string(version) +
                            ", expected " + std::to_string(kVersion));
  std::size_t index = 0;
  while (!r.done()) {
    const std::size_t at = r.pos();
    std::uint32_t len;
    std::string payload;
    std::uint64_t sum;
    if (!r.get(len) || !r.get_bytes(payload, len) || !r.get(sum)) {
      corruption_.push_back("record " + std::to_string(index) + " at byte " + std::to_string(at) + ": truncated");
      break;
    }
    auto rec = fnv1a(payload) == sum ? decode(payload) : std::nullopt;
    if (!rec) {
      Reader pr(payload);
      std::uint32_t kl;
      std::string id;
      std::string what = "record " + std::to_string(index) + " at byte " + std::to_string(at);
      if (pr.get(kl) && pr.get_bytes(id, kl)) what += " (" + id + ")";
      corruption_.push_back(what + ": checksum or payload invalid");
    } else {
      SumKey k = rec->key();
      records_.insert_or_assign(k, std::move(*rec));
    }
    ++index;
  }
}

std::optional<ExpSum> SumCache::get(const SumKey& key) const {
  std::shared_lock lock(mu_);
  auto it = records_.find(key);
  if (it == records_.end()) return std::nullopt;
  return it->second;
}

void SumCache::put(const ExpSum& sum) {
  std::unique_lock lock(mu_);
  const std::string payload = encode(sum);
  std::string rec;
  put_le<std::uint32_t>(rec, static_cast<std::uint32_t>(payload.size()));
  rec += payload;
  put_le<std::uint64_t>(rec, fnv1a(payload));

  if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
  const bool fresh = !std::filesystem::exists(path_) || std::filesystem::file_size(path_) == 0;
  std::ofstream out(path_, std::ios::binary | std::ios::app);
  if (!out) throw std::runtime_error("cache: cannot write " + path_.string());
  if (fresh) out << header();
  out << rec;
  out.flush();
  if (!out) throw std::runtime_error("cache: write failed for " + path_.string());
  records_.insert_or_assign(sum.key(), sum);
}

CacheStats SumCache::stats() const {
  std::shared_lock lock(mu_);
  CacheStats s;
  s.records = records_.size();
  std::error_code ec;
  auto size = std::filesystem::file_size(path_, ec);
  s.bytes = ec ? 0 : size;
  s.corruption = corruption_;
  return s;
}

void SumCache::clear() {
  std::unique_lock lock(mu_);
  records_.clear();
  corruption_.clear();
  std::error_code ec;
  std::filesystem::remove(path_, ec);
}

CacheVerifyReport SumCache::verify(double fraction) const {
  std::shared_lock lock(mu_);
  CacheVerifyReport rep;
  rep.corruption = corruption_;
  if (records_.empty()) return rep;
  std::vector<const ExpSum*> all;
  for (const auto& [k, v] : records_) all.push_back(&v);
  const std::size_t want = std::max<std::size_t>(1, static_cast<std::size_t>(fraction * all.size() + 0.5));
  // Fixed seed: repeated runs inspect the same records.
  std::mt19937_64 rng(0x6b6c6f6f7374ULL);
  std::vector<const ExpSum*> sample;
  std::sample(all.begin(), all.end(), std::back_inserter(sample), want, rng);
  for (const ExpSum* s : sample) {
    ++rep.checked;
    try {
      if (!(recompute(s->key()) == *s)) rep.mismatches.push_back(key_str(s->key()));
    } catch (const std::exception& e) {
      rep.mismatches.push_back(key_str(s->key()) + ": " + e.what());
    }
  }
  return rep;
}

ExpSum recompute(const SumKey& key) {
  if (key.multiplier == "standard") return standard_S(key.m, key.n, key.c);
  if (key.multiplier == "A") return classic_A(key.c, key.n);
  return generalized_S(key.m, key.n, key.c, MultiplierSpec::parse(key.multiplier));
}

ExpSum cached_generalized_S(SumCache* cache, Int m, Int n, Int c, const MultiplierSpec& spec) {
  if (!cache) return generalized_S(m, n, c, spec);
  SumKey key{spec.id(), m, n, c};
  if (auto hit = cache->get(key)) return *hit;
  ExpSum s = generalized_S(m, n, c, spec);
  cache->put(s);
  return s;
}

}  // namespace kloost
