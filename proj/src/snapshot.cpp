#include "admb/snapshot.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "admb/errors.hpp"

namespace admb {

namespace {

constexpr char kMagic[8] = {'A', 'D', 'M', 'B', '1', '\0', '\0', '\0'};
const char* const kFieldNames[] = {"w1", "w2", "w3", "rho"};

class Writer {
 public:
  template <typename T>
  void put(T value) {
    char bytes[sizeof(T)];
    std::memcpy(bytes, &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
    out_.append(bytes, sizeof(T));
  }
  void raw(const char* data, std::size_t size) { out_.append(data, size); }
  std::string take() { return std::move(out_); }

 private:
  std::string out_;
};

class Reader {
 public:
  explicit Reader(const std::string& in) : in_(in) {}

  template <typename T>
  T get() {
    char bytes[sizeof(T)];
    raw(bytes, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
    T value;
    std::memcpy(&value, bytes, sizeof(T));
    return value;
  }
  void raw(char* data, std::size_t size) {
    if (size > in_.size() - pos_) throw IoError("snapshot is truncated");
    std::memcpy(data, in_.data() + pos_, size);
    pos_ += size;
  }
  [[nodiscard]] bool done() const { return pos_ == in_.size(); }

 private:
  const std::string& in_;
  std::size_t pos_ = 0;
};

const ScalarField& component(const SolverState& s, int i) { return i < 3 ? s.w[i] : s.rho; }
ScalarField& component(SolverState& s, int i) { return i < 3 ? s.w[i] : s.rho; }

}  // namespace

std::string encode_snapshot(const ModelParams& params, const SolverState& state) {
  const TorusGrid& grid = state.w.grid();
  require_same_grid(grid, state.rho.grid());
  Writer w;
  w.raw(kMagic, sizeof kMagic);
  w.put<std::int32_t>(grid.modes_per_axis());
  w.put<std::int32_t>(grid.truncation_radius());
  w.put<double>(grid.box_length());
  w.put<double>(params.nu);
  w.put<double>(params.epsilon);
  w.put<double>(params.spec.alpha());
  w.put<std::int32_t>(params.spec.order());
  w.put<double>(state.time);
  w.put<std::uint32_t>(4);
  for (const char* name : kFieldNames) {
    const auto len = static_cast<std::uint8_t>(std::strlen(name));
    w.put<std::uint8_t>(len);
    w.raw(name, len);
  }
  const std::vector<WaveIndex> modes = grid.lattice();
  w.put<std::uint64_t>(modes.size());
  for (int c = 0; c < 4; ++c) {
    const ScalarField& f = component(state, c);
    for (const WaveIndex& k : modes) {
      const Complex v = f.at(k);
      w.put<double>(v.real());
      w.put<double>(v.imag());
    }
  }
  return w.take();
}

Snapshot decode_snapshot(const std::string& bytes) {
  Reader r(bytes);
  char magic[8];
  r.raw(magic, sizeof magic);
  if (std::memcmp(magic, kMagic, sizeof magic) != 0) throw IoError("not an ADMB1 snapshot");
  SnapshotHeader h;
  h.modes_per_axis = r.get<std::int32_t>();
  h.truncation_radius = r.get<std::int32_t>();
  h.box_length = r.get<double>();
  h.nu = r.get<double>();
  h.epsilon = r.get<double>();
  h.alpha = r.get<double>();
  h.order = r.get<std::int32_t>();
  h.time = r.get<double>();
  const auto nfields = r.get<std::uint32_t>();
  if (nfields != 4) throw IoError("snapshot must hold 4 fields, found " + std::to_string(nfields));
  for (std::uint32_t i = 0; i < nfields; ++i) {
    std::string name(r.get<std::uint8_t>(), '\0');
    r.raw(name.data(), name.size());
    if (name != kFieldNames[i]) throw IoError("unexpected snapshot field '" + name + "'");
    h.fields.push_back(std::move(name));
  }
  h.mode_count = r.get<std::uint64_t>();

  GridPtr grid;
  try {
    grid = TorusGrid::create(h.box_length, h.modes_per_axis, h.truncation_radius);
  } catch (const ConfigError& e) {
    throw IoError(std::string("snapshot header describes an invalid grid: ") + e.what());
  }
  const std::vector<WaveIndex> modes = grid->lattice();
  if (modes.size() != h.mode_count) throw IoError("snapshot mode count does not match its grid");

  SolverState state{VectorField(grid), ScalarField(grid), h.time};
  for (int c = 0; c < 4; ++c) {
    ScalarField& f = component(state, c);
    std::vector<Complex> mirrored;
    for (const WaveIndex& k : modes) {
      const double re = r.get<double>();
      const double im = r.get<double>();
      if (k.k3 >= 0) {
        f[grid->slot(k)] = Complex(re, im);
      } else {
        mirrored.emplace_back(re, im);
      }
    }
    std::size_t i = 0;
    for (const WaveIndex& k : modes) {
      if (k.k3 < 0 && f.at(k) != mirrored[i++]) {
        throw IoError("snapshot field " + h.fields[static_cast<std::size_t>(c)] +
                      " is not Hermitian");
      }
    }
  }
  if (!r.done()) throw IoError("trailing bytes after snapshot payload");
  return {std::move(h), std::move(state)};
}

void write_snapshot(const std::string& path, const ModelParams& params, const SolverState& state) {
  const std::string bytes = encode_snapshot(params, state);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.close();
  if (!out) throw IoError("write to '" + path + "' failed");
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open snapshot '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return decode_snapshot(buf.str());
}

ModelParams snapshot_params(const Snapshot& snap) {
  const SnapshotHeader& h = snap.header;
  try {
    return ModelParams(h.nu, h.epsilon,
                       DeconvolutionSpec(snap.state.w.grid_ptr(), h.alpha, h.order));
  } catch (const ConfigError& e) {
    throw IoError(std::string("snapshot header holds invalid parameters: ") + e.what());
  }
}

}  // namespace admb
