#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "eqlab/primes/primes.hpp"

namespace eqlab::primes {
namespace {

constexpr char kMagic[8] = {'P', 'R', 'I', 'M', 'E', 'S', 'v', '1'};

void put_u64(std::ostream& os, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(b), 8);
}

bool get_u64(std::istream& is, std::uint64_t& v) {
  unsigned char b[8];
  if (!is.read(reinterpret_cast<char*>(b), 8)) return false;
  v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return true;
}

std::string resolve(const std::string& path) {
  if (!path.empty()) return path;
  const char* env = std::getenv("EQLAB_CACHE");
  return env ? env : "";
}

} // namespace

void write_prime_cache(const std::string& path, const std::vector<std::uint64_t>& primes) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot write prime cache: " + tmp);
    os.write(kMagic, sizeof kMagic);
    put_u64(os, primes.size());
    std::uint64_t prev = 0;
    for (auto p : primes) {
      put_u64(os, p - prev);
      prev = p;
    }
    if (!os) throw std::runtime_error("short write to prime cache: " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

std::optional<std::vector<std::uint64_t>> read_prime_cache(const std::string& path, std::uint64_t max_count) {
  std::ifstream is(path, std::ios::binary);
  if (!is) return std::nullopt;
  char magic[8];
  if (!is.read(magic, 8) || std::memcmp(magic, kMagic, 8) != 0) return std::nullopt;
  std::uint64_t count = 0;
  if (!get_u64(is, count)) return std::nullopt;
  const std::uint64_t take = std::min(count, max_count);
  std::vector<std::uint64_t> out;
  out.reserve(take);
  std::uint64_t acc = 0;
  for (std::uint64_t i = 0; i < take; ++i) {
    std::uint64_t delta;
    if (!get_u64(is, delta)) return std::nullopt;
    acc += delta;
    out.push_back(acc);
  }
  return out;
}

std::vector<std::uint64_t> first_primes_cached(std::uint64_t count, const SieveOptions& opts, const std::string& cache_path) {
  const std::string path = resolve(cache_path);
  if (path.empty()) return first_primes(count, opts);
  if (auto cached = read_prime_cache(path, count); cached && cached->size() == count) return *cached;
  auto primes = first_primes(count, opts);
  try {
    write_prime_cache(path, primes);
  } catch (const std::exception&) {
    // A read-only cache location only costs speed.
  }
  return primes;
}

} // namespace eqlab::primes
