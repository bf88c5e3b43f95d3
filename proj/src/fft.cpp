#include "dlab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

namespace dlab {

namespace {

// FFTW_ESTIMATE keeps plan selection independent of timing, which keeps
// outputs bitwise reproducible from run to run.
struct PlanCache {
    std::mutex m;
    std::map<std::tuple<int, std::size_t, std::size_t, int>, fftw_plan> plans;

    fftw_plan get(int rank, std::size_t n0, std::size_t n1, int sign)
    {
        std::lock_guard<std::mutex> lock(m);
        auto key = std::make_tuple(rank, n0, n1, sign);
        auto it = plans.find(key);
        if (it != plans.end()) return it->second;
        std::size_t n = rank == 1 ? n0 : n0 * n1;
        fftw_complex* buf = fftw_alloc_complex(n);
        unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        int dir = sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD;
        fftw_plan p = rank == 1 ? fftw_plan_dft_1d(int(n0), buf, buf, dir, flags)
                                : fftw_plan_dft_2d(int(n0), int(n1), buf, buf, dir, flags);
        fftw_free(buf);
        plans.emplace(key, p);
        return p;
    }
};

PlanCache& cache()
{
    static PlanCache c;
    return c;
}

}  // namespace

void dft_2d(std::vector<cplx>& data, std::size_t n0, std::size_t n1, int sign)
{
    fftw_plan p = cache().get(2, n0, n1, sign);
    auto* d = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(p, d, d);
}

void dft_1d(cplx* data, std::size_t n, int sign)
{
    fftw_plan p = cache().get(1, n, 0, sign);
    auto* d = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(p, d, d);
}

void dft_1d(std::vector<cplx>& data, int sign) { dft_1d(data.data(), data.size(), sign); }

SpectralField2D transform_complex(const Grid2D& g, const std::vector<cplx>& f)
{
    SpectralField2D F(g, false);
    F.coeffs = f;
    dft_2d(F.coeffs, g.nx, g.ny, -1);
    const double s = g.dx() * g.dy() / (2.0 * std::numbers::pi);
    for (auto& c : F.coeffs) c *= s;
    return F;
}

SpectralField2D transform(const RealField2D& f)
{
    std::vector<cplx> buf(f.values.begin(), f.values.end());
    SpectralField2D F = transform_complex(f.grid, buf);
    F.hermitian = true;
    return F;
}

std::vector<cplx> inverse_transform_complex(const SpectralField2D& F)
{
    const Grid2D& g = F.grid;
    std::vector<cplx> buf = F.coeffs;
    dft_2d(buf, g.nx, g.ny, +1);
    const double s = g.dxi() * g.dmu() / (2.0 * std::numbers::pi);
    for (auto& c : buf) c *= s;
    return buf;
}

RealField2D inverse_transform(const SpectralField2D& F)
{
    std::vector<cplx> buf = inverse_transform_complex(F);
    RealField2D f(F.grid);
    for (std::size_t n = 0; n < buf.size(); ++n) f.values[n] = buf[n].real();
    return f;
}

}  // namespace dlab
