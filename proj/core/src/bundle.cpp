#include "repol/bundle.hpp"

#include <cmath>
#include <limits>

#include "repol/errors.hpp"

namespace repol {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// splitmix64 finalizer: invertible 64-bit mix.
std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
}

std::uint64_t fnv1a(const void* data, std::size_t len, std::uint64_t h) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001B3ULL;
    }
    return h;
}

// Distinct tag bytes keep fork("7") and fork(7) from aliasing.
std::uint64_t hash_label(std::string_view label) {
    std::uint64_t h = fnv1a("s", 1, 0xCBF29CE484222325ULL);
    return fnv1a(label.data(), label.size(), h);
}

std::uint64_t hash_label(std::uint64_t index) {
    std::uint64_t h = fnv1a("i", 1, 0xCBF29CE484222325ULL);
    unsigned char bytes[8];
    for (int i = 0; i < 8; ++i) bytes[i] = static_cast<unsigned char>(index >> (8 * i));
    return fnv1a(bytes, 8, h);
}

std::uint64_t derive_key(std::uint64_t parent, std::uint64_t label_hash) {
    return mix64(mix64(parent + kGolden) ^ label_hash);
}

}  // namespace

std::uint64_t Stream::next_u64() {
    counter_ += 1;
    return mix64(key_ + kGolden * counter_);
}

double Stream::next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Stream::next_unit_open() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

Bundle::Bundle(std::uint64_t master_seed)
    : master_seed_(master_seed), key_(mix64(master_seed ^ kGolden)), path_() {}

Bundle Bundle::fork(std::string_view label) const {
    auto path = path_;
    path.emplace_back(label);
    return Bundle(master_seed_, derive_key(key_, hash_label(label)), std::move(path));
}

Bundle Bundle::fork(std::uint64_t index) const {
    auto path = path_;
    path.push_back("#" + std::to_string(index));
    return Bundle(master_seed_, derive_key(key_, hash_label(index)), std::move(path));
}

double uniform_in(Stream& s, double width) {
    double v = width * s.next_unit();
    if (v >= width) v = std::nextafter(width, 0.0);
    return v;
}

std::int64_t geometric(Stream& s, double eps) {
    if (!(eps > 0.0) || eps > 1.0) {
        throw Error("domain", "geometric eps must lie in (0, 1]");
    }
    if (eps == 1.0) {
        s.next_u64();  // keep stream consumption uniform across eps
        return 1;
    }
    const double u = s.next_unit_open();
    const double x = std::floor(std::log(u) / std::log1p(-eps));
    // log(u) <= 0 and log1p(-eps) < 0, so x >= 0 barring rounding at u == 1.
    return 1 + static_cast<std::int64_t>(x < 0.0 ? 0.0 : x);
}

std::vector<double> sample_uniform_box(const Bundle& bundle, std::size_t n, double width) {
    if (!(width > 0.0) || !std::isfinite(width)) {
        throw Error("domain", "uniform box width must be positive and finite");
    }
    if (n == 0) {
        throw Error("domain", "uniform box dimension must be >= 1");
    }
    Stream s = bundle.fork("u").stream();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = uniform_in(s, width);
    return out;
}

std::int64_t sample_geometric(const Bundle& bundle, double eps) {
    Stream s = bundle.fork("g").stream();
    return geometric(s, eps);
}

}  // namespace repol
