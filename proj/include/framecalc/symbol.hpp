#pragma once

#include <compare>
#include <memory>
#include <stdexcept>
#include <string>

namespace framecalc {

/// Value class of a formal small function symbol: real like f, g or imaginary
/// like the electromagnetic potentials.
enum class Kind { Real, Imaginary, Complex };

/// Bitmask of coordinate directions a symbol may depend on. Directions outside
/// the mask have identically vanishing partials, which is how stationary
/// families are expressed.
struct Deps {
    std::uint8_t mask = 0xF;

    static constexpr std::uint8_t kAll = 0xF;
    static constexpr std::uint8_t kSpatial = 0xE;
    static constexpr std::uint8_t kTime = 0x1;

    bool contains(int dir) const { return (mask >> dir) & 1u; }
};

inline Deps deps_all() { return Deps{Deps::kAll}; }
inline Deps deps_spatial() { return Deps{Deps::kSpatial}; }
inline Deps deps_none() { return Deps{0}; }
inline Deps deps_of(std::initializer_list<int> dirs) {
    Deps d{0};
    for (int i : dirs) d.mask |= std::uint8_t(1u << i);
    return d;
}

/// A named small function. Symbols are compared by name; construction of two
/// distinct symbols sharing a name inside one expression context is a caller
/// error that surfaces in merge checks.
class Symbol {
public:
    Symbol() = default;
    static Symbol make(std::string name, Kind kind = Kind::Real, Deps deps = deps_all()) {
        if (name.empty()) throw std::invalid_argument("Symbol: empty name");
        Symbol s;
        s.data_ = std::make_shared<const Data>(Data{std::move(name), kind, deps});
        return s;
    }

    const std::string& name() const { return data_->name; }
    Kind kind() const { return data_->kind; }
    Deps deps() const { return data_->deps; }
    bool valid() const { return data_ != nullptr; }

    bool depends_on(int dir) const { return data_->deps.contains(dir); }

    friend bool operator==(const Symbol& a, const Symbol& b) {
        if (a.data_ == b.data_) return true;
        return a.data_ && b.data_ && a.data_->name == b.data_->name;
    }
    friend bool operator!=(const Symbol& a, const Symbol& b) { return !(a == b); }
    friend bool operator<(const Symbol& a, const Symbol& b) {
        return a.data_->name < b.data_->name;
    }

private:
    struct Data {
        std::string name;
        Kind kind;
        Deps deps;
    };
    std::shared_ptr<const Data> data_;
};

} // namespace framecalc
