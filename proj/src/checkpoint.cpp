#include "qg/checkpoint.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

namespace qg {

namespace {

constexpr char magic[4] = {'Q', 'G', 'X', '1'};

void put_u32(std::string& out, uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u64(std::string& out, uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_f64(std::string& out, double v) { put_u64(out, std::bit_cast<uint64_t>(v)); }

class Reader {
public:
    Reader(const std::string& data, const std::string& path) : data_(data), path_(path) {}

    void expect_magic() {
        if (data_.size() < 4 || std::memcmp(data_.data(), magic, 4) != 0)
            throw std::runtime_error("checkpoint '" + path_ + "': bad magic (not a QGX1 file)");
        pos_ = 4;
    }

    uint32_t u32() {
        need(4);
        uint32_t v = 0;
        for (int i = 0; i < 4; ++i)
            v |= static_cast<uint32_t>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
        pos_ += 4;
        return v;
    }

    uint64_t u64() {
        need(8);
        uint64_t v = 0;
        for (int i = 0; i < 8; ++i)
            v |= static_cast<uint64_t>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
        pos_ += 8;
        return v;
    }

    double f64() { return std::bit_cast<double>(u64()); }

    void expect_end() const {
        if (pos_ != data_.size())
            throw std::runtime_error("checkpoint '" + path_ + "': trailing bytes (corrupted)");
    }

private:
    void need(size_t count) const {
        if (pos_ + count > data_.size())
            throw std::runtime_error("checkpoint '" + path_ + "': truncated file");
    }

    const std::string& data_;
    std::string path_;
    size_t pos_ = 0;
};

} // namespace

void write_checkpoint(const SimState& state, double alpha, double k, const std::string& path) {
    const Grid& grid = state.theta.grid();
    std::string out;
    out.reserve(4 + 4 + 8 * 5 + state.theta.coeffs().size() * 16);
    out.append(magic, 4);
    put_u32(out, static_cast<uint32_t>(grid.n()));
    put_f64(out, grid.l());
    put_f64(out, alpha);
    put_f64(out, k);
    put_f64(out, state.t);
    put_u64(out, static_cast<uint64_t>(state.step_count));
    for (const cplx& c : state.theta.coeffs()) {
        put_f64(out, c.real());
        put_f64(out, c.imag());
    }

    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open checkpoint '" + path + "' for writing");
    f.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!f) throw std::runtime_error("failed writing checkpoint '" + path + "'");
}

Checkpoint read_checkpoint(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open checkpoint '" + path + "'");
    std::string data((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());

    Reader r(data, path);
    r.expect_magic();
    const uint32_t n = r.u32();
    const double l = r.f64();
    const double alpha = r.f64();
    const double k = r.f64();
    const double t = r.f64();
    const uint64_t steps = r.u64();

    if (n < 4 || n % 2 != 0 || n > (1u << 16))
        throw std::runtime_error("checkpoint '" + path + "': implausible grid size");
    Grid grid(static_cast<int>(n), l);

    SpectralField theta(grid);
    for (cplx& c : theta.coeffs()) {
        const double re = r.f64();
        const double im = r.f64();
        c = cplx{re, im};
    }
    r.expect_end();

    Checkpoint ck{alpha, k, SimState(std::move(theta))};
    ck.state.t = t;
    ck.state.step_count = static_cast<long>(steps);
    return ck;
}

} // namespace qg
