#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "dp7/bergman.hpp"
#include "dp7/geometry.hpp"
#include "dp7/parallel.hpp"
#include "dp7/quadrature.hpp"
#include "dp7/threshold.hpp"

namespace {

double time_call(const std::function<double()>& f, double& out_value) {
  const auto start = std::chrono::steady_clock::now();
  out_value = f();
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(stop - start).count();
}

void report(const char* name, const std::function<double(dp7::ExecMode)>& kernel) {
  double v_serial = 0.0, v_omp = 0.0;
  const double t_serial =
      time_call([&] { return kernel(dp7::ExecMode::Serial); }, v_serial);
  const double t_omp =
      time_call([&] { return kernel(dp7::ExecMode::OpenMP); }, v_omp);
  std::printf("%-24s serial %8.3fs  openmp %8.3fs  speedup %5.2fx  |diff| %.3e\n",
              name, t_serial, t_omp, t_serial / t_omp,
              std::abs(v_serial - v_omp));
}

}  // namespace

int main() {
  std::printf("reduction kernels, serial baseline vs OpenMP path\n");

  report("volume quadrature", [](dp7::ExecMode mode) {
    return dp7::radial_integral_2d_once(
        [](double r1, double r2) {
          return 4.0 * dp7::density_u0_radial(r1, r2) * r1 * r2;
        },
        1024, mode);
  });

  report("dyadic patch ladder", [](dp7::ExecMode mode) {
    dp7::ScanParams sp;
    sp.mode = mode;
    const auto targets = dp7::phi_family_targets(0.3, 0.0);
    double total = 0.0;
    for (const auto& t : targets) total += dp7::dyadic_patch_integral(t, 48, sp);
    return total;
  });

  report("gram diagonal N=3", [](dp7::ExecMode mode) {
    dp7::QuadratureGrid quad;
    quad.mode = mode;
    const auto gammas = dp7::group_norm_integrals(3, quad);
    double total = 0.0;
    for (double g : gammas) total += g;
    return total;
  });

  return 0;
}
