#include "admb/transform.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>

#include "admb/errors.hpp"

namespace admb {

namespace {

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};
using RealBuffer = std::unique_ptr<double, FftwFree>;
using ComplexBuffer = std::unique_ptr<fftw_complex, FftwFree>;

RealBuffer alloc_real(std::size_t n) { return RealBuffer(fftw_alloc_real(n)); }
ComplexBuffer alloc_complex(std::size_t n) { return ComplexBuffer(fftw_alloc_complex(n)); }

/// r2c / c2r plans for one cube size. Plans are created once under a lock
/// and then executed with the new-array interface, which is thread safe.
class PlanPair {
 public:
  explicit PlanPair(int m) : m_(m) {
    const std::size_t nr = real_size();
    const std::size_t nc = complex_size();
    auto r = alloc_real(nr);
    auto c = alloc_complex(nc);
    forward_ = fftw_plan_dft_r2c_3d(m, m, m, r.get(), c.get(), FFTW_ESTIMATE);
    backward_ = fftw_plan_dft_c2r_3d(m, m, m, c.get(), r.get(),
                                     FFTW_ESTIMATE | FFTW_DESTROY_INPUT);
    if (forward_ == nullptr || backward_ == nullptr) {
      throw NumericalError("FFTW planning failed");
    }
  }
  PlanPair(const PlanPair&) = delete;
  PlanPair& operator=(const PlanPair&) = delete;
  ~PlanPair() {
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
  }

  [[nodiscard]] std::size_t real_size() const {
    return static_cast<std::size_t>(m_) * m_ * m_;
  }
  [[nodiscard]] std::size_t complex_size() const {
    return static_cast<std::size_t>(m_) * m_ * (m_ / 2 + 1);
  }
  void forward(double* in, fftw_complex* out) const { fftw_execute_dft_r2c(forward_, in, out); }
  void backward(fftw_complex* in, double* out) const { fftw_execute_dft_c2r(backward_, in, out); }

 private:
  int m_;
  fftw_plan forward_ = nullptr;
  fftw_plan backward_ = nullptr;
};

const PlanPair& plans(int m) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<PlanPair>> cache;
  std::lock_guard lock(mutex);
  auto& entry = cache[m];
  if (!entry) entry = std::make_unique<PlanPair>(m);
  return *entry;
}

std::size_t padded_slot(const WaveIndex& k, int m) {
  const auto wrap = [m](int v) { return static_cast<std::size_t>(v < 0 ? v + m : v); };
  return (wrap(k.k1) * static_cast<std::size_t>(m) + wrap(k.k2)) * (m / 2 + 1) +
         static_cast<std::size_t>(k.k3);
}

}  // namespace

int dealiased_size(const TorusGrid& grid) { return 3 * grid.modes_per_axis() / 2; }

PhysicalField to_physical(const ScalarField& f) {
  return to_physical(f, f.grid().modes_per_axis());
}

PhysicalField to_physical(const ScalarField& f, int m) {
  const TorusGrid& g = f.grid();
  if (m < g.modes_per_axis() || m % 2 != 0) {
    throw ConfigError("physical grid must be even and at least as fine as the spectral grid");
  }
  const PlanPair& p = plans(m);
  auto spec = alloc_complex(p.complex_size());
  std::memset(spec.get(), 0, sizeof(fftw_complex) * p.complex_size());
  for (std::size_t s : g.retained_slots()) {
    const std::size_t t = padded_slot(g.index(s), m);
    spec.get()[t][0] = f[s].real();
    spec.get()[t][1] = f[s].imag();
  }
  auto real = alloc_real(p.real_size());
  p.backward(spec.get(), real.get());
  PhysicalField out{m, std::vector<double>(real.get(), real.get() + p.real_size())};
  return out;
}

ScalarField from_physical(const GridPtr& grid, const PhysicalField& samples) {
  const int m = samples.points_per_axis;
  if (m < grid->modes_per_axis() || m % 2 != 0) {
    throw ConfigError("physical grid must be even and at least as fine as the spectral grid");
  }
  const PlanPair& p = plans(m);
  if (samples.values.size() != p.real_size()) {
    throw ConfigError("sample array does not match its declared size");
  }
  auto real = alloc_real(p.real_size());
  std::copy(samples.values.begin(), samples.values.end(), real.get());
  auto spec = alloc_complex(p.complex_size());
  p.forward(real.get(), spec.get());
  const double norm = 1.0 / static_cast<double>(p.real_size());
  ScalarField f(grid);
  for (std::size_t s : grid->retained_slots()) {
    const std::size_t t = padded_slot(grid->index(s), m);
    f[s] = Complex(spec.get()[t][0] * norm, spec.get()[t][1] * norm);
  }
  // r2c evaluates both members of each k3 = 0 pair independently.
  enforce_hermitian(f);
  return f;
}

}  // namespace admb
