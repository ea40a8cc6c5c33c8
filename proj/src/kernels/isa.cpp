#include "polariton/kernels/isa.hpp"

#include <cstdlib>
#include <cstring>

namespace polariton::kernels {

bool isa_supported(Isa isa) {
    switch (isa) {
        case Isa::Scalar:
            return true;
        case Isa::Avx2:
#if (defined(__x86_64__) || defined(_M_X64)) && (defined(__GNUC__) || defined(__clang__))
            return __builtin_cpu_supports("avx2");
#else
            return false;
#endif
    }
    return false;
}

Isa best_isa() {
    const char* force = std::getenv("POLARITON_FORCE_SCALAR");
    if (force != nullptr && std::strcmp(force, "1") == 0) return Isa::Scalar;
    return isa_supported(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
}

const char* isa_name(Isa isa) {
    return isa == Isa::Avx2 ? "avx2" : "scalar";
}

}  // namespace polariton::kernels
