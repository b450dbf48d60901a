#pragma once

/**
 * \file   amgkit/config.hpp
 * \brief  Hierarchical parameter tree and its flat text format.
 *
 * Keys are dotted paths ("precond.relax.type"); leaves are strings,
 * integers, reals or booleans. The text format is one `path = value` per
 * line with `#` comments; later lines override earlier ones.
 */

#include <cctype>
#include <charconv>
#include <cstddef>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

#include <amgkit/error.hpp>

namespace amgkit {

using param_leaf = std::variant<std::string, long long, double, bool>;

namespace detail {

inline bool valid_path(std::string_view path) {
    if (path.empty()) return false;
    std::size_t seg = 0;
    for (char c : path) {
        if (c == '.') {
            if (seg == 0) return false;
            seg = 0;
        } else if (std::isspace(static_cast<unsigned char>(c)) || c == '=' || c == '#') {
            return false;
        } else {
            ++seg;
        }
    }
    return seg > 0;
}

inline const char *leaf_type_name(const param_leaf &v) {
    switch (v.index()) {
    case 0: return "string";
    case 1: return "integer";
    case 2: return "real";
    default: return "boolean";
    }
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

} // namespace detail

class param_tree {
  public:
    template <class V>
    param_tree &put(const std::string &path, V &&value) {
        if (!detail::valid_path(path)) throw config_error("invalid parameter path '" + path + "'");
        leaves_[path] = to_leaf(std::forward<V>(value));
        return *this;
    }

    /// Value at `path`, or `def` when absent. Integers widen to reals;
    /// every other type mismatch throws config_error naming the path.
    template <class V>
    V get(const std::string &path, const V &def) const {
        read_.insert(path);
        auto it = leaves_.find(path);
        if (it == leaves_.end()) return def;
        return convert<V>(path, it->second);
    }

    std::string get(const std::string &path, const char *def) const {
        return get<std::string>(path, std::string(def));
    }

    bool contains(const std::string &path) const { return leaves_.count(path) != 0; }
    std::size_t size() const { return leaves_.size(); }
    bool empty() const { return leaves_.empty(); }
    const std::map<std::string, param_leaf> &leaves() const { return leaves_; }

    /// Every path passed to get() so far.
    const std::set<std::string> &accessed() const { return read_; }

    friend bool operator==(const param_tree &a, const param_tree &b) {
        return a.leaves_ == b.leaves_;
    }

  private:
    std::map<std::string, param_leaf> leaves_;
    mutable std::set<std::string> read_;

    template <class V>
    static param_leaf to_leaf(V &&v) {
        using D = std::decay_t<V>;
        if constexpr (std::is_same_v<D, param_leaf>) {
            return std::forward<V>(v);
        } else if constexpr (std::is_same_v<D, bool>) {
            return v;
        } else if constexpr (std::is_integral_v<D>) {
            return static_cast<long long>(v);
        } else if constexpr (std::is_floating_point_v<D>) {
            return static_cast<double>(v);
        } else {
            return std::string(std::forward<V>(v));
        }
    }

    template <class V>
    static V convert(const std::string &path, const param_leaf &leaf) {
        auto mismatch = [&](const char *want) {
            return config_error(path + ": expected " + want + ", found " +
                                detail::leaf_type_name(leaf));
        };
        if constexpr (std::is_same_v<V, bool>) {
            if (auto b = std::get_if<bool>(&leaf)) return *b;
            throw mismatch("boolean");
        } else if constexpr (std::is_integral_v<V>) {
            if (auto i = std::get_if<long long>(&leaf)) {
                if (*i < static_cast<long long>(std::numeric_limits<V>::min()) ||
                    static_cast<unsigned long long>(*i) >
                        static_cast<unsigned long long>(std::numeric_limits<V>::max()))
                    throw config_error(path + ": integer value out of range");
                return static_cast<V>(*i);
            }
            throw mismatch("integer");
        } else if constexpr (std::is_floating_point_v<V>) {
            if (auto d = std::get_if<double>(&leaf)) return static_cast<V>(*d);
            if (auto i = std::get_if<long long>(&leaf)) return static_cast<V>(*i);
            throw mismatch("real");
        } else {
            if (auto s = std::get_if<std::string>(&leaf)) return V(*s);
            throw mismatch("string");
        }
    }
};

/// Interprets one value token: true/false, integer, real (contains '.' or
/// an exponent), otherwise string.
inline param_leaf parse_leaf(std::string_view v) {
    if (v == "true") return true;
    if (v == "false") return false;

    const char *b = v.data();
    const char *e = v.data() + v.size();
    const bool realish = v.find_first_of(".eE") != std::string_view::npos;
    if (!realish) {
        long long i = 0;
        auto [p, ec] = std::from_chars(b, e, i);
        if (ec == std::errc() && p == e) return i;
    } else {
        double d = 0;
        auto [p, ec] = std::from_chars(b, e, d);
        bool digit = v.find_first_of("0123456789") != std::string_view::npos;
        if (ec == std::errc() && p == e && digit) return d;
    }
    return std::string(v);
}

inline param_tree parse_config(std::string_view text) {
    param_tree tree;
    std::size_t lineno = 0;
    while (!text.empty()) {
        ++lineno;
        std::size_t nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view() : text.substr(nl + 1);

        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;

        std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) throw parse_error(lineno, "expected 'path = value'");
        std::string_view key = detail::trim(line.substr(0, eq));
        std::string_view val = detail::trim(line.substr(eq + 1));
        if (key.empty()) throw parse_error(lineno, "missing parameter path");
        if (!detail::valid_path(key))
            throw parse_error(lineno, "invalid parameter path '" + std::string(key) + "'");
        if (val.empty()) throw parse_error(lineno, "missing value for '" + std::string(key) + "'");

        tree.put(std::string(key), parse_leaf(val));
    }
    return tree;
}

inline std::string format_leaf(const param_leaf &leaf) {
    struct visitor {
        std::string operator()(const std::string &s) const { return s; }
        std::string operator()(long long i) const { return std::to_string(i); }
        std::string operator()(bool b) const { return b ? "true" : "false"; }
        std::string operator()(double d) const {
            char buf[64];
            auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), d);
            std::string s(buf, p);
            if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
            return s;
        }
    };
    return std::visit(visitor{}, leaf);
}

/// Writes the tree in the `path = value` format, one leaf per line.
inline std::string serialize_config(const param_tree &tree) {
    std::ostringstream os;
    for (const auto &[path, leaf] : tree.leaves()) os << path << " = " << format_leaf(leaf) << "\n";
    return os.str();
}

/// Parses a `path=value` override as given on a command line.
inline void apply_override(param_tree &tree, std::string_view assignment) {
    std::size_t eq = assignment.find('=');
    if (eq == std::string_view::npos)
        throw config_error("override '" + std::string(assignment) + "' is not of the form path=value");
    std::string key(detail::trim(assignment.substr(0, eq)));
    std::string_view val = detail::trim(assignment.substr(eq + 1));
    if (val.empty()) throw config_error("override '" + key + "' has an empty value");
    tree.put(key, parse_leaf(val));
}

} // namespace amgkit
