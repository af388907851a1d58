#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "quasicox/chartable.hpp"
#include "quasicox/multipoly.hpp"

namespace quasicox {

// Parsed group label: A1..A3, B2..B3, I2(3)..I2(12).
struct GroupName {
    char family = 'A';
    unsigned param = 1;  // rank for A/B, k for I2(k)

    unsigned rank() const { return family == 'I' ? 2 : param; }

    std::string str() const {
        if (family == 'I') return "I2(" + std::to_string(param) + ")";
        return std::string(1, family) + std::to_string(param);
    }

    static GroupName parse(const std::string& text) {
        const auto fail = [&]() -> GroupName {
            throw std::invalid_argument("unknown group '" + text +
                                        "' (supported: A1, A2, A3, B2, B3, I2(k) for 3 <= k <= 12)");
        };
        if (text.size() == 2 && (text[0] == 'A' || text[0] == 'B')) {
            const unsigned r = static_cast<unsigned>(text[1] - '0');
            if (text[0] == 'A' && r >= 1 && r <= 3) return {'A', r};
            if (text[0] == 'B' && r >= 2 && r <= 3) return {'B', r};
            return fail();
        }
        if (text.rfind("I2(", 0) == 0 && text.back() == ')') {
            const std::string inner = text.substr(3, text.size() - 4);
            if (inner.empty() || inner.size() > 2) return fail();
            for (char c : inner)
                if (!std::isdigit(static_cast<unsigned char>(c))) return fail();
            const unsigned k = static_cast<unsigned>(std::stoul(inner));
            if (k >= 3 && k <= 12) return {'I', k};
            return fail();
        }
        return fail();
    }
};

// A finite Coxeter group in its reflection representation, with all the
// derived data the rest of the library consumes: multiplication tables,
// conjugacy classes, reflections with normalized roots, reflection orbits,
// fundamental degrees and the character table.  Element order is canonical
// (identity first, the rest sorted by matrix entries), so every run of the
// program sees identical indices.
class CoxeterDatum {
public:
    static std::shared_ptr<const CoxeterDatum> build(const GroupName& name) {
        return std::shared_ptr<const CoxeterDatum>(new CoxeterDatum(name));
    }
    static std::shared_ptr<const CoxeterDatum> build(const std::string& name) {
        return build(GroupName::parse(name));
    }

    // The default family exercised by the cross-group checks.
    static std::vector<std::string> default_family() {
        return {"A1", "A2", "A3", "B2", "B3", "I2(3)", "I2(4)", "I2(5)", "I2(6)"};
    }

    const GroupName& name() const { return name_; }
    size_t rank() const { return n_; }
    size_t order() const { return elems_.size(); }
    const CycloField* field() const { return F_; }

    const std::vector<Matrix>& elements() const { return elems_; }
    const Matrix& element(unsigned i) const { return elems_[i]; }
    unsigned product(unsigned i, unsigned j) const { return mul_[i][j]; }
    unsigned inverse(unsigned i) const { return inv_[i]; }
    unsigned element_order(unsigned i) const { return order_[i]; }

    size_t num_reflections() const { return refl_.size(); }
    unsigned reflection_element(size_t s) const { return refl_[s]; }
    int reflection_position(unsigned elem) const { return refl_pos_[elem]; }
    bool is_reflection(unsigned elem) const { return refl_pos_[elem] >= 0; }
    // Root of reflection s, normalized so its first nonzero coordinate is 1.
    const std::vector<Scalar>& root(size_t s) const { return roots_[s]; }
    const MultiPoly& root_form(size_t s) const { return root_forms_[s]; }
    const Scalar& root_norm2(size_t s) const { return root_norm2_[s]; }

    const std::vector<std::vector<unsigned>>& reflection_orbits() const { return orbits_; }
    unsigned orbit_of(size_t s) const { return orbit_of_[s]; }

    const std::vector<std::vector<unsigned>>& classes() const { return classes_; }
    unsigned class_of(unsigned elem) const { return class_of_[elem]; }
    unsigned class_rep(size_t c) const { return classes_[c][0]; }

    const std::vector<unsigned>& degrees() const { return degrees_; }

    const std::vector<IrreducibleCharacter>& character_table() const { return chars_; }
    size_t trivial_char() const { return trivial_idx_; }
    size_t sign_char() const { return sign_idx_; }
    size_t reflection_char() const { return reflection_idx_; }
    // character value on the class of an element
    const Scalar& char_value(size_t tau, unsigned elem) const {
        return chars_[tau].values[class_of_[elem]];
    }

    // (w . p)(x) = p(w^{-1} x)
    MultiPoly act(unsigned w, const MultiPoly& p) const { return substituter(inv_[w]).apply(p); }
    // p(w x)
    MultiPoly compose(const MultiPoly& p, unsigned w) const { return substituter(w).apply(p); }

    // alpha_s(w^{-1} x) = lambda * alpha_{s'}(x); returns (s', lambda)
    std::pair<unsigned, Scalar> root_conjugate(unsigned w, size_t s) const {
        return {root_perm_[w][s], root_scale_[w][s]};
    }

    // det(1 - t w) for a class representative (a class function)
    const UniPoly<Scalar>& char_poly(size_t cls) const { return charpolys_[cls]; }

    Scalar det(unsigned elem) const { return dets_[elem]; }

private:
    explicit CoxeterDatum(const GroupName& name) : name_(name), n_(name.rank()) {
        std::vector<Matrix> gens = generators(name, F_);
        close_group(gens);
        build_tables();
        find_reflections();
        find_classes();
        find_orbits();
        build_root_action();
        degrees_ = fundamental_degrees(name);
        chars_ = character_table_burnside_dixon({mul_, inv_, classes_, class_of_, F_});
        locate_special_chars();
        charpolys_.reserve(classes_.size());
        for (size_t c = 0; c < classes_.size(); ++c)
            charpolys_.push_back(char_poly_of(elems_[classes_[c][0]]));
    }

    // --- construction helpers -------------------------------------------

    static std::vector<Matrix> generators(const GroupName& name, const CycloField*& F) {
        F = nullptr;
        if (name.family == 'I' || (name.family == 'A' && name.param == 2) ||
            (name.family == 'B' && name.param == 2)) {
            const unsigned k = name.family == 'I' ? name.param : (name.family == 'A' ? 3u : 4u);
            const unsigned L = std::lcm(4u, k);
            F = CycloField::get(L);
            const Scalar half(Rational(1, 2));
            // cos(2pi/k) and sin(2pi/k) = cos(2pi (L/4 - L/k) / L)
            const Scalar c = half * Scalar::two_cos(F, 1, k);
            const Scalar s = half * Scalar::two_cos(F, static_cast<long>(L / 4) - static_cast<long>(L / k), L);
            Matrix s0(2, 2, {Scalar(1), Scalar(0), Scalar(0), Scalar(-1)});
            Matrix s1(2, 2, {c, s, s, -c});
            return {s0, s1};
        }
        if (name.family == 'A' && name.param == 1) {
            return {Matrix(1, 1, {Scalar(-1)})};
        }
        if (name.family == 'A' && name.param == 3) {
            // even-signed permutations of rank 3: roots e_i - e_j and e_i + e_j
            Matrix swap12(3, 3, {Scalar(0), Scalar(1), Scalar(0),
                                 Scalar(1), Scalar(0), Scalar(0),
                                 Scalar(0), Scalar(0), Scalar(1)});
            Matrix swap23(3, 3, {Scalar(1), Scalar(0), Scalar(0),
                                 Scalar(0), Scalar(0), Scalar(1),
                                 Scalar(0), Scalar(1), Scalar(0)});
            Matrix flipswap23(3, 3, {Scalar(1), Scalar(0), Scalar(0),
                                     Scalar(0), Scalar(0), Scalar(-1),
                                     Scalar(0), Scalar(-1), Scalar(0)});
            return {swap12, swap23, flipswap23};
        }
        if (name.family == 'B' && name.param == 3) {
            Matrix swap12(3, 3, {Scalar(0), Scalar(1), Scalar(0),
                                 Scalar(1), Scalar(0), Scalar(0),
                                 Scalar(0), Scalar(0), Scalar(1)});
            Matrix swap23(3, 3, {Scalar(1), Scalar(0), Scalar(0),
                                 Scalar(0), Scalar(0), Scalar(1),
                                 Scalar(0), Scalar(1), Scalar(0)});
            Matrix flip3(3, 3, {Scalar(1), Scalar(0), Scalar(0),
                                Scalar(0), Scalar(1), Scalar(0),
                                Scalar(0), Scalar(0), Scalar(-1)});
            return {swap12, swap23, flip3};
        }
        throw std::invalid_argument("unsupported group " + name.str());
    }

    static std::vector<unsigned> fundamental_degrees(const GroupName& name) {
        if (name.family == 'A' && name.param == 1) return {2};
        if (name.family == 'A' && name.param == 2) return {2, 3};
        if (name.family == 'A' && name.param == 3) return {2, 3, 4};
        if (name.family == 'B' && name.param == 2) return {2, 4};
        if (name.family == 'B' && name.param == 3) return {2, 4, 6};
        return {2, name.param};  // I2(k)
    }

    void close_group(const std::vector<Matrix>& gens) {
        std::map<Matrix, unsigned> seen;
        std::vector<Matrix> pool{Matrix::identity(n_)};
        seen.emplace(pool[0], 0);
        for (size_t head = 0; head < pool.size(); ++head) {
            for (const Matrix& g : gens) {
                Matrix prod = pool[head] * g;
                if (seen.emplace(prod, static_cast<unsigned>(pool.size())).second)
                    pool.push_back(std::move(prod));
            }
        }
        // canonical order: identity, then ascending by entries
        elems_.clear();
        elems_.push_back(Matrix::identity(n_));
        for (const auto& [m, idx] : seen)
            if (!(m == elems_[0])) elems_.push_back(m);
    }

    void build_tables() {
        std::map<Matrix, unsigned> index;
        for (unsigned i = 0; i < elems_.size(); ++i) index.emplace(elems_[i], i);
        const size_t N = elems_.size();
        mul_.assign(N, std::vector<unsigned>(N, 0));
        for (unsigned i = 0; i < N; ++i)
            for (unsigned j = 0; j < N; ++j) {
                auto it = index.find(elems_[i] * elems_[j]);
                if (it == index.end()) throw std::logic_error("group closure is not closed");
                mul_[i][j] = it->second;
            }
        inv_.assign(N, 0);
        for (unsigned i = 0; i < N; ++i)
            for (unsigned j = 0; j < N; ++j)
                if (mul_[i][j] == 0) {
                    inv_[i] = j;
                    break;
                }
        order_.assign(N, 1);
        for (unsigned i = 0; i < N; ++i) {
            unsigned o = 1, cur = i;
            while (cur != 0) {
                cur = mul_[cur][i];
                ++o;
            }
            order_[i] = o;
        }
        dets_.reserve(N);
        for (unsigned i = 0; i < N; ++i) dets_.push_back(elems_[i].det());
    }

    void find_reflections() {
        const size_t N = elems_.size();
        refl_pos_.assign(N, -1);
        for (unsigned i = 1; i < N; ++i) {
            if (order_[i] != 2) continue;
            Scalar trace(0);
            for (size_t d = 0; d < n_; ++d) trace += elems_[i](d, d);
            if (trace != Scalar(static_cast<long>(n_) - 2)) continue;
            refl_pos_[i] = static_cast<int>(refl_.size());
            refl_.push_back(i);
        }
        for (unsigned s = 0; s < refl_.size(); ++s) {
            Matrix m = elems_[refl_[s]] + Matrix::identity(n_);
            auto basis = exact_kernel(m);
            if (basis.size() != 1) throw std::logic_error("reflection has no unique root line");
            std::vector<Scalar> v = basis[0];
            Scalar lead(0);
            for (const auto& x : v)
                if (!x.is_zero()) {
                    lead = x;
                    break;
                }
            const Scalar inv = lead.inverse();
            for (auto& x : v) x *= inv;
            Scalar norm2(0);
            for (const auto& x : v) norm2 += x * x;
            roots_.push_back(v);
            root_norm2_.push_back(norm2);
            root_forms_.push_back(MultiPoly::linear_form(v));
        }
    }

    void find_classes() {
        const size_t N = elems_.size();
        class_of_.assign(N, 0);
        std::vector<bool> done(N, false);
        for (unsigned i = 0; i < N; ++i) {
            if (done[i]) continue;
            std::vector<unsigned> cls;
            for (unsigned g = 0; g < N; ++g) {
                const unsigned c = mul_[mul_[g][i]][inv_[g]];
                if (!done[c]) {
                    done[c] = true;
                    cls.push_back(c);
                }
            }
            std::sort(cls.begin(), cls.end());
            const unsigned id = static_cast<unsigned>(classes_.size());
            for (unsigned c : cls) class_of_[c] = id;
            classes_.push_back(std::move(cls));
        }
    }

    void find_orbits() {
        // reflections are conjugate iff they lie in the same conjugacy class
        orbit_of_.assign(refl_.size(), 0);
        std::map<unsigned, unsigned> cls_to_orbit;
        for (size_t s = 0; s < refl_.size(); ++s) {
            const unsigned c = class_of_[refl_[s]];
            auto [it, fresh] = cls_to_orbit.emplace(c, static_cast<unsigned>(orbits_.size()));
            if (fresh) orbits_.emplace_back();
            orbit_of_[s] = it->second;
            orbits_[it->second].push_back(static_cast<unsigned>(s));
        }
    }

    void build_root_action() {
        const size_t N = elems_.size();
        root_perm_.assign(N, std::vector<unsigned>(refl_.size(), 0));
        root_scale_.assign(N, std::vector<Scalar>(refl_.size(), Scalar(0)));
        for (unsigned w = 0; w < N; ++w)
            for (size_t s = 0; s < refl_.size(); ++s) {
                const unsigned conj = mul_[mul_[w][refl_[s]]][inv_[w]];
                const int sp = refl_pos_[conj];
                if (sp < 0) throw std::logic_error("conjugate of a reflection is not a reflection");
                // alpha_s(w^{-1} x) = (w alpha_s, x)
                const std::vector<Scalar> v = elems_[w].apply(roots_[s]);
                const auto& target = roots_[sp];
                Scalar lambda(0);
                for (size_t t = 0; t < n_; ++t)
                    if (!target[t].is_zero()) {
                        lambda = v[t] / target[t];
                        break;
                    }
                for (size_t t = 0; t < n_; ++t)
                    if (v[t] != lambda * target[t])
                        throw std::logic_error("root image is not proportional to a root");
                root_perm_[w][s] = static_cast<unsigned>(sp);
                root_scale_[w][s] = lambda;
            }
    }

    void locate_special_chars() {
        const size_t r = classes_.size();
        std::vector<Scalar> triv(r, Scalar(1)), sgn(r), refl(r);
        for (size_t c = 0; c < r; ++c) {
            const Matrix& m = elems_[classes_[c][0]];
            sgn[c] = dets_[classes_[c][0]];
            Scalar tr(0);
            for (size_t d = 0; d < n_; ++d) tr += m(d, d);
            refl[c] = tr;
        }
        const auto locate = [&](const std::vector<Scalar>& vals, const char* what) -> size_t {
            for (size_t t = 0; t < chars_.size(); ++t)
                if (chars_[t].values == vals) return t;
            throw std::logic_error(std::string("character table: missing ") + what);
        };
        trivial_idx_ = locate(triv, "trivial character");
        sign_idx_ = locate(sgn, "determinant character");
        reflection_idx_ = locate(refl, "reflection character");
    }

    UniPoly<Scalar> char_poly_of(const Matrix& m) const {
        // det(1 - t m) for n <= 3, from traces and the determinant
        Scalar tr(0);
        for (size_t d = 0; d < n_; ++d) tr += m(d, d);
        std::vector<Scalar> c;
        if (n_ == 1) {
            c = {Scalar(1), -tr};
        } else if (n_ == 2) {
            c = {Scalar(1), -tr, m.det()};
        } else if (n_ == 3) {
            const Matrix m2 = m * m;
            Scalar tr2(0);
            for (size_t d = 0; d < n_; ++d) tr2 += m2(d, d);
            const Scalar half(Rational(1, 2));
            c = {Scalar(1), -tr, half * (tr * tr - tr2), -m.det()};
        } else {
            throw std::logic_error("char_poly_of: rank out of range");
        }
        return UniPoly<Scalar>(std::move(c));
    }

    LinearSubstituter& substituter(unsigned w) const {
        if (subst_.empty()) subst_.resize(elems_.size());
        if (!subst_[w]) subst_[w] = std::make_unique<LinearSubstituter>(elems_[w]);
        return *subst_[w];
    }

    GroupName name_;
    size_t n_;
    const CycloField* F_ = nullptr;
    std::vector<Matrix> elems_;
    std::vector<std::vector<unsigned>> mul_;
    std::vector<unsigned> inv_;
    std::vector<unsigned> order_;
    std::vector<Scalar> dets_;
    std::vector<unsigned> refl_;   // reflection position -> element index
    std::vector<int> refl_pos_;    // element index -> reflection position or -1
    std::vector<std::vector<Scalar>> roots_;
    std::vector<Scalar> root_norm2_;
    std::vector<MultiPoly> root_forms_;
    std::vector<std::vector<unsigned>> root_perm_;
    std::vector<std::vector<Scalar>> root_scale_;
    std::vector<std::vector<unsigned>> orbits_;
    std::vector<unsigned> orbit_of_;
    std::vector<std::vector<unsigned>> classes_;
    std::vector<unsigned> class_of_;
    std::vector<unsigned> degrees_;
    std::vector<IrreducibleCharacter> chars_;
    size_t trivial_idx_ = 0, sign_idx_ = 0, reflection_idx_ = 0;
    std::vector<UniPoly<Scalar>> charpolys_;
    mutable std::vector<std::unique_ptr<LinearSubstituter>> subst_;
};

inline std::shared_ptr<const CoxeterDatum> build_group(const std::string& name) {
    return CoxeterDatum::build(name);
}

// Reflection multiplicities, constant on conjugation orbits.
class Multiplicity {
public:
    Multiplicity(const CoxeterDatum& W, std::vector<unsigned> per_orbit)
        : orbit_of_(orbit_map(W)), m_(std::move(per_orbit)) {
        if (m_.size() != W.reflection_orbits().size())
            throw std::invalid_argument("Multiplicity: need one value per reflection orbit");
    }
    static Multiplicity uniform(const CoxeterDatum& W, unsigned m) {
        return Multiplicity(W, std::vector<unsigned>(W.reflection_orbits().size(), m));
    }

    size_t num_orbits() const { return m_.size(); }
    unsigned orbit_value(size_t orbit) const { return m_.at(orbit); }
    unsigned of_reflection(size_t s) const { return m_[orbit_of_.at(s)]; }
    const std::vector<unsigned>& values() const { return m_; }

    std::string str() const {
        std::string out = "(";
        for (size_t i = 0; i < m_.size(); ++i) {
            if (i) out += ",";
            out += std::to_string(m_[i]);
        }
        return out + ")";
    }

private:
    static std::vector<unsigned> orbit_map(const CoxeterDatum& W) {
        std::vector<unsigned> v(W.num_reflections());
        for (size_t s = 0; s < v.size(); ++s) v[s] = W.orbit_of(s);
        return v;
    }
    std::vector<unsigned> orbit_of_;
    std::vector<unsigned> m_;
};

}  // namespace quasicox
