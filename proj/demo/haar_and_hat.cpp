// Builds the Haar and hat multiresolution systems, prints their check
// reports, orthogonalizes the hat and attaches CQF wavelets.

#include <cstdio>
#include <numbers>

#include "mrakit/mrakit.hpp"

using namespace mrakit;

namespace {

void print_system(const char* name, const MRASystem& sys) {
  const CheckReport& r = sys.report;
  std::printf("%s\n", name);
  std::printf("  cascade %s after %d iterations, phi on 2^-%d grid with %lld samples\n",
              r.converged ? "converged" : "did not converge", r.iterations_used, sys.phi.resolution(),
              static_cast<long long>(sys.phi.size()));
  std::printf("  admissibility %.3e  dilation %.3e  quadrature time %.3e / freq %.3e\n", r.admissibility, r.dilation,
              r.quadrature_time, r.quadrature_freq);
  std::printf("  Riesz bounds A = %.6f, B = %.6f   shift orthonormality defect %.3e\n", r.riesz.A, r.riesz.B, r.orthonormality);
  std::printf("  partition of unity %.3e with constant %.6f\n", r.pou_function, r.pou_constant.real());
  const auto failures = mra_failures(r);
  if (failures.empty()) {
    std::printf("  -> multiresolution analysis\n");
  } else {
    for (const auto& f : failures) std::printf("  -> fails %s (%.3e)\n", f.check.c_str(), f.value);
  }
}

void print_wavelet(const WaveletSystem& ws) {
  const WaveletQuadrature t = check_wavelet_quadrature_time(ws);
  const CqfSufficiency s = cqf_sufficiency(ws.g);
  std::printf("  CQF wavelet (N = %lld): rebuild %.3e, quadrature hh %.3e gg %.3e hg %.3e, g(pi) = %+.15f\n",
              static_cast<long long>(ws.cqf->shift), ws.rebuild_residual, t.hh, t.gg, t.hg, s.value.real());
}

}  // namespace

int main() {
  const double s = std::numbers::sqrt2 / 2;
  const MRASystem haar = build_mra(FilterSequence(0, {s, s}));
  print_system("Haar", haar);
  print_wavelet(build_cqf_wavelet(haar));

  const MRASystem hat = build_mra(FilterSequence(0, {s / 2, s, s / 2}));
  print_system("Hat (linear B-spline)", hat);
  print_wavelet(build_cqf_wavelet(hat));

  const SampledFunction bl = battle_lemarie(hat.phi);
  std::printf("  Battle-Lemarie orthogonalization: shift orthonormality defect %.3e\n", check_orthonormal_shifts(bl));

  const MRASystem degenerate = build_mra(FilterSequence::delta(1, std::numbers::sqrt2));
  print_system("sqrt2 delta_1", degenerate);
  return 0;
}
