#pragma once

namespace polariton::kernels {

/// Instruction-set variant of a sweep kernel. Scalar is the reference; every
/// vector variant is tested against it.
enum class Isa { Scalar, Avx2 };

bool isa_supported(Isa isa);

/// Widest variant usable on this CPU. Honors POLARITON_FORCE_SCALAR=1.
Isa best_isa();

const char* isa_name(Isa isa);

}  // namespace polariton::kernels
