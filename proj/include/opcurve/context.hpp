#pragma once

namespace opcurve {

/// Precision context shared by parsing, pipelines and the CLI.
struct Context {
  int xprec = 12;  // Nx: coefficients known through x^(Nx-1)
  int z_lo = -12;
  int z_hi = 12;
  int depth = 8;  // d-depth: degrees down to d^-depth
};

}  // namespace opcurve
