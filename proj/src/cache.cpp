#include "qdmol/cache.hpp"

#include <array>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace qdmol {

namespace {

// compact SHA-256 (FIPS 180-4)
struct Sha256 {
    std::array<std::uint32_t, 8> h{0x6a09e667, 0xbb67ae85, 0x3c6ef372,
                                   0xa54ff53a, 0x510e527f, 0x9b05688c,
                                   0x1f83d9ab, 0x5be0cd19};
    std::array<std::uint8_t, 64> buf{};
    std::size_t buf_len = 0;
    std::uint64_t total = 0;

    static std::uint32_t rotr(std::uint32_t x, int n) {
        return (x >> n) | (x << (32 - n));
    }

    void process(const std::uint8_t* p) {
        static const std::uint32_t k[64] = {
            0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b,
            0x59f111f1, 0x923f82a4, 0xab1c5ed5, 0xd807aa98, 0x12835b01,
            0x243185be, 0x550c7dc3, 0x72be5d74, 0x80deb1fe, 0x9bdc06a7,
            0xc19bf174, 0xe49b69c1, 0xefbe4786, 0x0fc19dc6, 0x240ca1cc,
            0x2de92c6f, 0x4a7484aa, 0x5cb0a9dc, 0x76f988da, 0x983e5152,
            0xa831c66d, 0xb00327c8, 0xbf597fc7, 0xc6e00bf3, 0xd5a79147,
            0x06ca6351, 0x14292967, 0x27b70a85, 0x2e1b2138, 0x4d2c6dfc,
            0x53380d13, 0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85,
            0xa2bfe8a1, 0xa81a664b, 0xc24b8b70, 0xc76c51a3, 0xd192e819,
            0xd6990624, 0xf40e3585, 0x106aa070, 0x19a4c116, 0x1e376c08,
            0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a, 0x5b9cca4f,
            0x682e6ff3, 0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208,
            0x90befffa, 0xa4506ceb, 0xbef9a3f7, 0xc67178f2};
        std::uint32_t w[64];
        for (int i = 0; i < 16; ++i) {
            w[i] = std::uint32_t(p[4 * i]) << 24 |
                   std::uint32_t(p[4 * i + 1]) << 16 |
                   std::uint32_t(p[4 * i + 2]) << 8 | std::uint32_t(p[4 * i + 3]);
        }
        for (int i = 16; i < 64; ++i) {
            const std::uint32_t s0 =
                rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
            const std::uint32_t s1 =
                rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
            w[i] = w[i - 16] + s0 + w[i - 7] + s1;
        }
        auto a = h;
        for (int i = 0; i < 64; ++i) {
            const std::uint32_t s1 =
                rotr(a[4], 6) ^ rotr(a[4], 11) ^ rotr(a[4], 25);
            const std::uint32_t ch = (a[4] & a[5]) ^ (~a[4] & a[6]);
            const std::uint32_t t1 = a[7] + s1 + ch + k[i] + w[i];
            const std::uint32_t s0 =
                rotr(a[0], 2) ^ rotr(a[0], 13) ^ rotr(a[0], 22);
            const std::uint32_t maj =
                (a[0] & a[1]) ^ (a[0] & a[2]) ^ (a[1] & a[2]);
            const std::uint32_t t2 = s0 + maj;
            a[7] = a[6];
            a[6] = a[5];
            a[5] = a[4];
            a[4] = a[3] + t1;
            a[3] = a[2];
            a[2] = a[1];
            a[1] = a[0];
            a[0] = t1 + t2;
        }
        for (int i = 0; i < 8; ++i) h[i] += a[i];
    }

    void update(const void* data, std::size_t len) {
        const auto* p = static_cast<const std::uint8_t*>(data);
        total += len;
        while (len > 0) {
            const std::size_t take = std::min(len, buf.size() - buf_len);
            std::memcpy(buf.data() + buf_len, p, take);
            buf_len += take;
            p += take;
            len -= take;
            if (buf_len == buf.size()) {
                process(buf.data());
                buf_len = 0;
            }
        }
    }

    std::string hex_digest() {
        const std::uint64_t bits = total * 8;
        const std::uint8_t one = 0x80;
        update(&one, 1);
        const std::uint8_t zero = 0;
        while (buf_len != 56) update(&zero, 1);
        std::uint8_t lenb[8];
        for (int i = 0; i < 8; ++i) lenb[i] = std::uint8_t(bits >> (56 - 8 * i));
        update(lenb, 8);
        std::ostringstream os;
        os << std::hex;
        for (auto v : h) {
            for (int i = 28; i >= 0; i -= 4) os << ((v >> i) & 0xf);
        }
        return os.str();
    }
};

std::string cache_path(const std::string& dir, const std::string& key) {
    return dir + "/qdmol-" + key + ".tensor";
}

constexpr std::uint32_t kMagic = 0x51444d54; // "QDMT"

} // namespace

std::string sha256_hex(const std::string& data) {
    Sha256 s;
    s.update(data.data(), data.size());
    return s.hex_digest();
}

std::string tensor_cache_key(const MoInput& in) {
    std::ostringstream os;
    os.precision(17);
    os << "mat " << in.mat.effective_mass_ratio << ' '
       << in.mat.dielectric_const << ' ' << in.mat.g_factor << '\n'
       << "pot " << in.pot.V0 << ' ' << in.pot.a << ' ' << in.pot.Vb << ' '
       << in.pot.lx << ' ' << in.pot.ly << ' ' << in.pot.lbx << ' '
       << in.pot.lby << '\n'
       << "field " << in.field.B << ' ' << in.field.gauge_center_x << ' '
       << in.field.gauge_center_y << '\n'
       << "basis " << int(in.level) << ' ' << in.hbar_omega0 << ' '
       << in.half_sep << '\n'
       << "quad " << in.quad.rel_tol << ' ' << in.quad.max_depth << '\n';
    return sha256_hex(os.str());
}

std::optional<CoulombTensor> load_cached_tensor(const std::string& cache_dir,
                                                const std::string& key) {
    if (cache_dir.empty()) return std::nullopt;
    std::ifstream f(cache_path(cache_dir, key), std::ios::binary);
    if (!f) return std::nullopt;
    std::uint32_t magic = 0, version = 0, n = 0;
    std::uint64_t count = 0;
    f.read(reinterpret_cast<char*>(&magic), sizeof magic);
    f.read(reinterpret_cast<char*>(&version), sizeof version);
    f.read(reinterpret_cast<char*>(&n), sizeof n);
    f.read(reinterpret_cast<char*>(&count), sizeof count);
    if (!f || magic != kMagic || version != 1) return std::nullopt;
    CoulombTensor tensor{int(n)};
    for (std::uint64_t i = 0; i < count; ++i) {
        std::uint32_t k = 0;
        double re = 0, im = 0;
        f.read(reinterpret_cast<char*>(&k), sizeof k);
        f.read(reinterpret_cast<char*>(&re), sizeof re);
        f.read(reinterpret_cast<char*>(&im), sizeof im);
        if (!f) return std::nullopt;
        tensor.set_raw(k, {re, im});
    }
    return tensor;
}

void store_cached_tensor(const std::string& cache_dir, const std::string& key,
                         const CoulombTensor& tensor,
                         const std::vector<Orbital>& orbs) {
    if (cache_dir.empty()) return;
    std::error_code ec;
    std::filesystem::create_directories(cache_dir, ec);
    std::ofstream f(cache_path(cache_dir, key), std::ios::binary);
    if (!f) return;
    const std::uint32_t version = 1;
    const std::uint32_t n = std::uint32_t(orbs.size());
    const std::uint64_t count = tensor.raw().size();
    f.write(reinterpret_cast<const char*>(&kMagic), sizeof kMagic);
    f.write(reinterpret_cast<const char*>(&version), sizeof version);
    f.write(reinterpret_cast<const char*>(&n), sizeof n);
    f.write(reinterpret_cast<const char*>(&count), sizeof count);
    for (const auto& [k, v] : tensor.raw()) {
        const double re = v.real(), im = v.imag();
        f.write(reinterpret_cast<const char*>(&k), sizeof k);
        f.write(reinterpret_cast<const char*>(&re), sizeof re);
        f.write(reinterpret_cast<const char*>(&im), sizeof im);
    }
}

MoIntegrals cached_mo_integrals(const MoInput& in,
                                const std::string& cache_dir) {
    MoIntegrals ints;
    const LengthScales scales =
        length_scales(in.field.B, in.hbar_omega0, in.mat);
    ints.orbitals = in.level == BasisLevel::sp
                        ? make_sp_basis(in.half_sep, scales, in.field)
                        : make_s_basis(in.half_sep, scales, in.field);
    ints.one_body = compute_one_body(ints.orbitals, in.pot, in.field, in.mat);
    const std::string key = tensor_cache_key(in);
    if (auto cached = load_cached_tensor(cache_dir, key)) {
        ints.coulomb = std::move(*cached);
        return ints;
    }
    ints.coulomb =
        compute_coulomb_tensor(ints.orbitals, in.mat, in.quad, in.n_threads);
    store_cached_tensor(cache_dir, key, ints.coulomb, ints.orbitals);
    return ints;
}

} // namespace qdmol
