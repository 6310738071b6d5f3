#include "moyal/kernels.hpp"

#include <cstdlib>
#include <string>

namespace moyal::kern {

const Kernels* by_name(std::string_view name)
{
    if (name == "scalar")
        return &scalar_kernels();
#if defined(__x86_64__) && defined(MOYAL_HAVE_AVX2_SOURCES)
    if (name == "avx2" && avx2_supported())
        return &avx2_kernels();
#endif
    return nullptr;
}

namespace {

const Kernels& select()
{
    if (const char* env = std::getenv("MOYAL_KERNELS")) {
        if (const Kernels* k = by_name(env))
            return *k;
    }
#if defined(__x86_64__) && defined(MOYAL_HAVE_AVX2_SOURCES)
    if (avx2_supported())
        return avx2_kernels();
#endif
    return scalar_kernels();
}

} // namespace

const Kernels& active()
{
    static const Kernels& k = select();
    return k;
}

} // namespace moyal::kern
