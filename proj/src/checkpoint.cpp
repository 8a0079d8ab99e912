#include "graycensus/checkpoint.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <numeric>
#include <sstream>

namespace graycensus {

std::string_view to_string(CountTask t) {
  switch (t) {
    case CountTask::hamiltonian_cycles: return "hamiltonian";
    case CountTask::perfect_matchings: return "matchings";
  }
  return "unknown";
}

CountTask parse_count_task(std::string_view text) {
  if (text == "hamiltonian") return CountTask::hamiltonian_cycles;
  if (text == "matchings") return CountTask::perfect_matchings;
  throw std::invalid_argument("unknown task '" + std::string(text) + "' (expected hamiltonian|matchings)");
}

namespace {

constexpr std::uint8_t kMagic[4] = {'G', 'C', 'K', 'P'};

// Minimal little-endian magnitude; zero is empty.
std::size_t magnitude_bytes(Multiplicity v, std::uint8_t (&out)[16]) {
  std::size_t len = 0;
  while (v != 0) {
    out[len++] = static_cast<std::uint8_t>(v);
    v >>= 8;
  }
  return len;
}

// Hashes everything it forwards; `sink` may be null for digest-only passes.
class Writer {
 public:
  explicit Writer(std::ostream* sink) : sink_(sink) {}

  void raw(std::span<const std::uint8_t> b) {
    hash_.update(b);
    if (sink_ != nullptr) sink_->write(reinterpret_cast<const char*>(b.data()), static_cast<std::streamsize>(b.size()));
  }
  void u32(std::uint32_t x) { little(x, 4); }
  void u64(std::uint64_t x) { little(x, 8); }
  void blob(std::span<const std::uint8_t> b) {
    u32(static_cast<std::uint32_t>(b.size()));
    raw(b);
  }
  Sha256 seal() {
    const Sha256 d = hash_.finish();
    if (sink_ != nullptr) sink_->write(reinterpret_cast<const char*>(d.data()), static_cast<std::streamsize>(d.size()));
    return d;
  }

 private:
  void little(std::uint64_t x, int width) {
    std::uint8_t b[8];
    for (int i = 0; i < width; ++i) b[i] = static_cast<std::uint8_t>(x >> (8 * i));
    raw({b, static_cast<std::size_t>(width)});
  }
  std::ostream* sink_;
  Sha256Stream hash_;
};

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  void raw(std::uint8_t* out, std::size_t n) {
    in_.read(reinterpret_cast<char*>(out), static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in_.gcount()) != n) throw CheckpointError("checkpoint truncated");
    hash_.update({out, n});
  }
  std::uint32_t u32() { return static_cast<std::uint32_t>(little(4)); }
  std::uint64_t u64() { return little(8); }
  std::vector<std::uint8_t> blob(std::size_t max_len) {
    const std::uint32_t len = u32();
    if (len > max_len) throw CheckpointError("checkpoint field longer than allowed");
    std::vector<std::uint8_t> out(len);
    raw(out.data(), len);
    return out;
  }
  void verify_seal() {
    const Sha256 expected = hash_.finish();
    Sha256 stored{};
    in_.read(reinterpret_cast<char*>(stored.data()), static_cast<std::streamsize>(stored.size()));
    if (static_cast<std::size_t>(in_.gcount()) != stored.size()) throw CheckpointError("checkpoint truncated");
    if (stored != expected) throw CheckpointError("checkpoint integrity check failed (content digest mismatch)");
    if (in_.peek() != std::char_traits<char>::eof()) throw CheckpointError("trailing bytes after checkpoint digest");
  }

 private:
  std::uint64_t little(int width) {
    std::uint8_t b[8];
    raw(b, static_cast<std::size_t>(width));
    std::uint64_t x = 0;
    for (int i = 0; i < width; ++i) x |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return x;
  }
  std::istream& in_;
  Sha256Stream hash_;
};

Sha256 encode_into(const Checkpoint& c, std::ostream* sink) {
  for (std::size_t i = 1; i < c.size(); ++i) {
    if (!std::lexicographical_compare(c.state(i - 1).begin(), c.state(i - 1).end(), c.state(i).begin(),
                                      c.state(i).end())) {
      throw CheckpointError("checkpoint records must be sorted and distinct before encoding");
    }
  }
  Writer w(sink);
  w.raw(kMagic);
  w.u32(c.version);
  w.u32(static_cast<std::uint32_t>(c.n));
  w.raw(c.order_hash);
  w.u32(c.level);
  w.u64(c.size());
  w.u32(static_cast<std::uint32_t>(c.task));
  w.blob(c.partial_total.to_bytes());
  std::uint8_t mag[16];
  for (std::size_t i = 0; i < c.size(); ++i) {
    w.blob(c.state(i));
    w.blob({mag, magnitude_bytes(c.counts[i], mag)});
  }
  return w.seal();
}

}  // namespace

void Checkpoint::add(std::span<const std::uint8_t> state, Multiplicity count) {
  if (counts.empty() && states.empty()) width = state.size();
  if (state.size() != width) throw CheckpointError("checkpoint states must share one width");
  states.insert(states.end(), state.begin(), state.end());
  counts.push_back(count);
}

void Checkpoint::sort() {
  std::vector<std::size_t> idx(size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return std::memcmp(states.data() + a * width, states.data() + b * width, width) < 0;
  });
  std::vector<std::uint8_t> s(states.size());
  std::vector<Multiplicity> m(counts.size());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    std::memcpy(s.data() + i * width, states.data() + idx[i] * width, width);
    m[i] = counts[idx[i]];
  }
  states = std::move(s);
  counts = std::move(m);
}

std::vector<std::uint8_t> Checkpoint::encode() const {
  std::ostringstream out(std::ios::binary);
  encode_into(*this, &out);
  const std::string s = std::move(out).str();
  return {s.begin(), s.end()};
}

void Checkpoint::write(std::ostream& out) const { encode_into(*this, &out); }

Sha256 Checkpoint::digest() const { return encode_into(*this, nullptr); }

Checkpoint Checkpoint::read(std::istream& in) {
  Reader r(in);
  std::uint8_t magic[4];
  r.raw(magic, 4);
  if (std::memcmp(magic, kMagic, 4) != 0) throw CheckpointError("not a checkpoint file (bad magic)");
  Checkpoint c;
  c.version = r.u32();
  if (c.version != kVersion) throw CheckpointError("unsupported checkpoint version " + std::to_string(c.version));
  c.n = static_cast<int>(r.u32());
  r.raw(c.order_hash.data(), c.order_hash.size());
  c.level = r.u32();
  const std::uint64_t count = r.u64();
  const std::uint32_t task = r.u32();
  if (task != static_cast<std::uint32_t>(CountTask::hamiltonian_cycles) &&
      task != static_cast<std::uint32_t>(CountTask::perfect_matchings)) {
    throw CheckpointError("checkpoint names an unknown task");
  }
  c.task = static_cast<CountTask>(task);
  c.partial_total = BigCount::from_bytes(r.blob(4096));
  // Reserve only what a plausible file could hold; truncation is caught while reading.
  c.counts.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(count, 1u << 20)));
  for (std::uint64_t i = 0; i < count; ++i) {
    const auto state = r.blob(1024);
    const auto mag = r.blob(16);
    Multiplicity m = 0;
    for (std::size_t k = mag.size(); k-- > 0;) m = (m << 8) | mag[k];
    c.add(state, m);
  }
  r.verify_seal();
  return c;
}

Checkpoint Checkpoint::decode(std::span<const std::uint8_t> bytes) {
  std::istringstream in(std::string(bytes.begin(), bytes.end()), std::ios::binary);
  return read(in);
}

void write_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw CheckpointError("cannot open " + tmp.string() + " for writing");
    ckpt.write(out);
    out.flush();
    if (!out) throw CheckpointError("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

Checkpoint read_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError("cannot open checkpoint " + path.string());
  return Checkpoint::read(in);
}

std::filesystem::path checkpoint_path(const std::filesystem::path& dir, CountTask task, int n, std::uint32_t level) {
  return dir / (std::string(to_string(task)) + "-n" + std::to_string(n) + "-L" + std::to_string(level) + ".gckp");
}

}  // namespace graycensus
