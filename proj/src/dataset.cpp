#include "helios/dataset.hpp"

#include <array>
#include <cstring>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "helios/rng.hpp"

namespace helios {

namespace {

constexpr char kMagic[4] = {'H', 'I', 'S', 'D'};

// Stream identifiers for the per-dataset counter RNG.
constexpr std::uint64_t kStreamPositions = 1;
constexpr std::uint64_t kStreamAuxAngles = 2;
constexpr std::uint64_t kStreamNoise = 3;

template <typename T>
void put(std::string& buf, const T& v) {
    const char* p = reinterpret_cast<const char*>(&v);
    buf.append(p, sizeof(T)); // little-endian host assumed
}

template <typename T>
T get(const std::string& buf, std::size_t& off) {
    if (off + sizeof(T) > buf.size()) throw std::runtime_error("load_dataset: truncated file");
    T v;
    std::memcpy(&v, buf.data() + off, sizeof(T));
    off += sizeof(T);
    return v;
}

} // namespace

std::uint32_t crc32(const void* data, std::size_t len, std::uint32_t seed) {
    static const auto table = [] {
        std::array<std::uint32_t, 256> t{};
        for (std::uint32_t i = 0; i < 256; ++i) {
            std::uint32_t c = i;
            for (int j = 0; j < 8; ++j) c = (c >> 1) ^ (0xEDB88320u & (0u - (c & 1u)));
            t[i] = c;
        }
        return t;
    }();
    std::uint32_t c = ~seed;
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) c = table[(c ^ p[i]) & 0xFF] ^ (c >> 8);
    return ~c;
}

Triplet Dataset::triplet(std::size_t i) const {
    if (i >= size()) throw std::out_of_range("Dataset::triplet");
    Triplet t;
    const Complex* s = config_sensors(i);
    t.u_sen.assign(s, s + sensor_count());
    t.phi = aux_angles[i];
    t.u_aux = aux_values[i];
    return t;
}

SourceConfig gen_config(std::uint64_t seed, std::uint64_t config_index, int n_sources,
                        const Box& domain) {
    if (n_sources < 1) throw std::invalid_argument("gen_config: need at least one source");
    const CounterRng rng(seed, CounterRng::mix(kStreamPositions) ^ config_index);
    SourceConfig config;
    std::uint64_t counter = 0;
    for (int j = 0; j < n_sources; ++j) {
        bool placed = false;
        for (int attempt = 0; attempt < 10000; ++attempt) {
            const Point2 p{rng.uniform(counter++, domain.x_min + kBoundaryMargin, domain.x_max - kBoundaryMargin),
                           rng.uniform(counter++, domain.y_min + kBoundaryMargin, domain.y_max - kBoundaryMargin)};
            bool ok = true;
            for (const auto& s : config.sources)
                if (distance(p, s.position) < kMinSourceSeparation) { ok = false; break; }
            if (ok) {
                config.sources.push_back({p, rng.uniform(counter++, 5.0, 7.0)});
                placed = true;
                break;
            }
        }
        if (!placed) throw std::runtime_error("gen_config: rejection sampling failed after 10000 attempts");
    }
    return config;
}

Dataset build_dataset(const Aperture& ap, double k, int n_sources, int n_cfg, int n_aux,
                      double sigma, std::uint64_t seed) {
    if (n_cfg < 0 || n_aux < 0) throw std::invalid_argument("build_dataset: negative counts");
    Dataset ds;
    ds.header = DatasetHeader{ap, k, n_sources, n_cfg, n_aux, sigma, seed, 1};
    const int m = ap.sensor_count;
    ds.sensor_values.reserve(static_cast<std::size_t>(n_cfg) * m);
    ds.aux_angles.reserve(static_cast<std::size_t>(n_cfg) * n_aux);
    ds.aux_values.reserve(static_cast<std::size_t>(n_cfg) * n_aux);

    const CounterRng aux_rng(seed, kStreamAuxAngles);
    const CounterRng noise_seed_rng(seed, kStreamNoise);
    for (int c = 0; c < n_cfg; ++c) {
        const SourceConfig config = gen_config(seed, c, n_sources);
        const NoiseModel noise{sigma, noise_seed_rng.bits(c)};
        for (const auto& sample : measure(config, ap, k, noise))
            ds.sensor_values.push_back(sample.value);
        for (int p = 0; p < n_aux; ++p) {
            const double phi = aux_rng.uniform(static_cast<std::uint64_t>(c) * n_aux + p,
                                               -ap.half_angle, ap.half_angle);
            ds.aux_angles.push_back(phi);
            // Auxiliary targets are clean field values; only sensors carry noise.
            ds.aux_values.push_back(field_at(config, ap.sensor_position(phi), k));
        }
    }
    return ds;
}

void save_dataset(const Dataset& ds, const std::filesystem::path& path) {
    std::string payload;
    const int m = ds.sensor_count();
    payload.reserve(ds.size() * (2 * m + 3) * sizeof(double));
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const Complex* s = ds.config_sensors(i);
        for (int j = 0; j < m; ++j) { put(payload, s[j].real()); put(payload, s[j].imag()); }
        put(payload, ds.aux_angles[i]);
        put(payload, ds.aux_values[i].real());
        put(payload, ds.aux_values[i].imag());
    }

    std::string header;
    header.append(kMagic, 4);
    put(header, ds.header.format_version);
    put(header, ds.header.aperture.radius);
    put(header, ds.header.aperture.half_angle);
    put(header, static_cast<std::uint32_t>(ds.header.aperture.sensor_count));
    put(header, ds.header.k);
    put(header, static_cast<std::uint32_t>(ds.header.n_sources));
    put(header, static_cast<std::uint32_t>(ds.header.n_cfg));
    put(header, static_cast<std::uint32_t>(ds.header.n_aux));
    put(header, ds.header.sigma);
    put(header, ds.header.seed);
    put(header, crc32(payload.data(), payload.size()));

    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("save_dataset: cannot open " + path.string());
    os.write(header.data(), static_cast<std::streamsize>(header.size()));
    os.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    if (!os) throw std::runtime_error("save_dataset: write failed");
}

Dataset load_dataset(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("load_dataset: cannot open " + path.string());
    std::string buf((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());

    std::size_t off = 0;
    if (buf.size() < 4 || std::memcmp(buf.data(), kMagic, 4) != 0)
        throw std::runtime_error("load_dataset: bad magic");
    off = 4;

    Dataset ds;
    ds.header.format_version = get<std::uint32_t>(buf, off);
    if (ds.header.format_version != 1)
        throw std::runtime_error("load_dataset: unsupported format version");
    ds.header.aperture.radius = get<double>(buf, off);
    ds.header.aperture.half_angle = get<double>(buf, off);
    ds.header.aperture.sensor_count = static_cast<int>(get<std::uint32_t>(buf, off));
    ds.header.k = get<double>(buf, off);
    ds.header.n_sources = static_cast<int>(get<std::uint32_t>(buf, off));
    ds.header.n_cfg = static_cast<int>(get<std::uint32_t>(buf, off));
    ds.header.n_aux = static_cast<int>(get<std::uint32_t>(buf, off));
    ds.header.sigma = get<double>(buf, off);
    ds.header.seed = get<std::uint64_t>(buf, off);
    const std::uint32_t stored_crc = get<std::uint32_t>(buf, off);

    const std::size_t payload_len = buf.size() - off;
    if (crc32(buf.data() + off, payload_len) != stored_crc)
        throw std::runtime_error("load_dataset: checksum mismatch");

    const int m = ds.header.aperture.sensor_count;
    const std::size_t n = static_cast<std::size_t>(ds.header.n_cfg) * ds.header.n_aux;
    const std::size_t expected = n * (2 * m + 3) * sizeof(double);
    if (payload_len != expected) throw std::runtime_error("load_dataset: payload size mismatch");

    ds.sensor_values.resize(static_cast<std::size_t>(ds.header.n_cfg) * m);
    ds.aux_angles.resize(n);
    ds.aux_values.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) {
            const double re = get<double>(buf, off);
            const double im = get<double>(buf, off);
            if (i % ds.header.n_aux == 0)
                ds.sensor_values[(i / ds.header.n_aux) * m + j] = Complex{re, im};
        }
        ds.aux_angles[i] = get<double>(buf, off);
        const double re = get<double>(buf, off);
        const double im = get<double>(buf, off);
        ds.aux_values[i] = Complex{re, im};
    }
    return ds;
}

void export_dataset_csv(const Dataset& ds, std::ostream& os) {
    const int m = ds.sensor_count();
    for (int j = 0; j < m; ++j) os << "u_re_" << j << ",u_im_" << j << ',';
    os << "phi,aux_re,aux_im\n";
    os.precision(17);
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const Complex* s = ds.config_sensors(i);
        for (int j = 0; j < m; ++j) os << s[j].real() << ',' << s[j].imag() << ',';
        os << ds.aux_angles[i] << ',' << ds.aux_values[i].real() << ','
           << ds.aux_values[i].imag() << '\n';
    }
}

} // namespace helios
