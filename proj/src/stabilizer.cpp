#include "hqg/stabilizer.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace hqg {

namespace {

using Row = std::vector<std::uint8_t>;

int and_count(const Row &a, const Row &b) {
    int c = 0;
    for (std::size_t i = 0; i < a.size(); ++i) c += a[i] & b[i];
    return c;
}

// Interleaved (x_q, z_q) bit row.
Row bits(const Pauli &p) {
    Row r(2 * p.size());
    for (int q = 0; q < p.size(); ++q) {
        r[2 * q] = p.x[q];
        r[2 * q + 1] = p.z[q];
    }
    return r;
}

// Incremental GF(2) basis that tracks which inputs were combined.
class Gf2Basis {
public:
    explicit Gf2Basis(int inputs) : inputs_(inputs) {}

    // Returns false if row is dependent.
    bool add(Row row, int source) {
        Row combo(inputs_, 0);
        combo[source] = 1;
        reduce(row, combo);
        auto it = std::find(row.begin(), row.end(), 1);
        if (it == row.end()) return false;
        pivots_.push_back(static_cast<int>(it - row.begin()));
        rows_.push_back(std::move(row));
        combos_.push_back(std::move(combo));
        return true;
    }

    std::optional<Row> solve(Row target) const {
        Row combo(inputs_, 0);
        reduce(target, combo);
        if (std::find(target.begin(), target.end(), 1) != target.end()) return std::nullopt;
        return combo;
    }

    int rank() const { return static_cast<int>(rows_.size()); }

private:
    void reduce(Row &row, Row &combo) const {
        for (std::size_t i = 0; i < rows_.size(); ++i)
            if (row[pivots_[i]]) {
                for (std::size_t k = 0; k < row.size(); ++k) row[k] ^= rows_[i][k];
                for (std::size_t k = 0; k < combo.size(); ++k) combo[k] ^= combos_[i][k];
            }
    }

    int inputs_;
    std::vector<Row> rows_, combos_;
    std::vector<int> pivots_;
};

}  // namespace

int gf2_rank(std::vector<std::vector<std::uint8_t>> rows) {
    if (rows.empty()) return 0;
    Gf2Basis b(static_cast<int>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) b.add(rows[i], static_cast<int>(i));
    return b.rank();
}

Pauli Pauli::from_string(const std::string &s) {
    std::string body = s;
    int phase = 0;
    if (!body.empty() && (body[0] == '+' || body[0] == '-')) {
        if (body[0] == '-') phase = 2;
        body = body.substr(1);
    }
    if (!body.empty() && body[0] == 'i') {
        phase += 1;
        body = body.substr(1);
    }
    Pauli p(static_cast<int>(body.size()));
    for (std::size_t q = 0; q < body.size(); ++q) {
        switch (body[q]) {
        case 'I': break;
        case 'X': p.x[q] = 1; break;
        case 'Z': p.z[q] = 1; break;
        case 'Y':
            p.x[q] = p.z[q] = 1;
            phase += 1;  // Y = i X Z
            break;
        default: throw UnsupportedSpec(std::string("bad Pauli character ") + body[q]);
        }
    }
    p.phase = phase & 3;
    return p;
}

bool Pauli::is_identity() const {
    return std::none_of(x.begin(), x.end(), [](auto b) { return b; }) &&
           std::none_of(z.begin(), z.end(), [](auto b) { return b; });
}

int Pauli::weight() const {
    int w = 0;
    for (int q = 0; q < size(); ++q) w += (x[q] | z[q]);
    return w;
}

std::vector<int> Pauli::support() const {
    std::vector<int> s;
    for (int q = 0; q < size(); ++q)
        if (x[q] | z[q]) s.push_back(q);
    return s;
}

bool Pauli::commutes(const Pauli &o) const { return ((and_count(x, o.z) + and_count(z, o.x)) & 1) == 0; }

bool Pauli::hermitian() const { return ((phase - and_count(x, z)) & 1) == 0; }

Pauli Pauli::operator*(const Pauli &o) const {
    if (size() != o.size()) throw LabelMismatch("Pauli size mismatch");
    Pauli r(size());
    for (int q = 0; q < size(); ++q) {
        r.x[q] = x[q] ^ o.x[q];
        r.z[q] = z[q] ^ o.z[q];
    }
    r.phase = (phase + o.phase + 2 * and_count(z, o.x)) & 3;
    return r;
}

std::string Pauli::str() const {
    static const char *ph[] = {"+", "+i", "-", "-i"};
    int p = phase;
    std::string body;
    for (int q = 0; q < size(); ++q) {
        if (x[q] && z[q]) {
            body += 'Y';
            p -= 1;
        } else body += x[q] ? 'X' : (z[q] ? 'Z' : 'I');
    }
    return ph[((p % 4) + 4) % 4] + body;
}

Pauli Pauli::transpose() const {
    Pauli r = *this;
    r.phase = (phase + 2 * and_count(x, z)) & 3;
    return r;
}

Pauli Pauli::inverse() const {
    Pauli r = *this;
    r.phase = ((-phase + 2 * and_count(x, z)) % 4 + 4) & 3;
    return r;
}

Pauli Pauli::restrict(const std::vector<int> &qubits) const {
    Pauli r(static_cast<int>(qubits.size()));
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        r.x[i] = x[qubits[i]];
        r.z[i] = z[qubits[i]];
    }
    r.phase = phase;
    return r;
}

Mat Pauli::dense() const {
    Mat X(2, 2), Z(2, 2);
    X << 0, 1, 1, 0;
    Z << 1, 0, 0, -1;
    std::vector<Mat> parts;
    for (int q = 0; q < size(); ++q) {
        Mat m = Mat::Identity(2, 2);
        if (x[q]) m = m * X;
        if (z[q]) m = m * Z;
        parts.push_back(m);
    }
    static const cplx ip[] = {1.0, cplx(0, 1), -1.0, cplx(0, -1)};
    if (parts.empty()) return Mat::Constant(1, 1, ip[phase & 3]);
    return ip[phase & 3] * kron_all(parts);
}

Vec Pauli::apply(const Vec &v) const {
    const int n = size();
    long long xm = 0, zm = 0;
    for (int q = 0; q < n; ++q) {
        long long bit = 1LL << (n - 1 - q);
        if (x[q]) xm |= bit;
        if (z[q]) zm |= bit;
    }
    static const cplx ip[] = {1.0, cplx(0, 1), -1.0, cplx(0, -1)};
    Vec out(v.size());
    for (long long b = 0; b < v.size(); ++b) {
        double s = (__builtin_popcountll(b & zm) & 1) ? -1.0 : 1.0;
        out(b ^ xm) = ip[phase & 3] * s * v(b);
    }
    return out;
}

StabilizerState::StabilizerState(std::vector<Leg> legs, std::vector<Pauli> gens)
    : legs_(std::move(legs)), gens_(std::move(gens)) {
    std::set<std::string> seen;
    for (const auto &l : legs_)
        if (!seen.insert(l.label).second) throw LabelMismatch("duplicate leg " + l.label);
    for (const auto &g : gens_)
        if (g.size() != size()) throw LabelMismatch("generator size does not match leg count");
}

int StabilizerState::leg_index(const std::string &label) const {
    for (int i = 0; i < size(); ++i)
        if (legs_[i].label == label) return i;
    return -1;
}

std::vector<int> StabilizerState::inputs() const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
        if (legs_[i].input) out.push_back(i);
    return out;
}

std::vector<int> StabilizerState::outputs() const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
        if (!legs_[i].input) out.push_back(i);
    return out;
}

void StabilizerState::set_input(const std::string &label, bool input) {
    int i = leg_index(label);
    if (i < 0) throw LabelMismatch("no leg " + label);
    legs_[i].input = input;
}

void StabilizerState::relabel(const std::string &from, const std::string &to) {
    int i = leg_index(from);
    if (i < 0) throw LabelMismatch("no leg " + from);
    if (leg_index(to) >= 0) throw LabelMismatch("leg " + to + " already present");
    legs_[i].label = to;
}

bool StabilizerState::valid() const {
    if (static_cast<int>(gens_.size()) != size()) return false;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        if (!gens_[i].hermitian()) return false;
        for (std::size_t j = i + 1; j < gens_.size(); ++j)
            if (!gens_[i].commutes(gens_[j])) return false;
    }
    std::vector<Row> rows;
    for (const auto &g : gens_) rows.push_back(bits(g));
    return gf2_rank(rows) == size();
}

std::optional<std::vector<std::uint8_t>> StabilizerState::decompose(const Pauli &P) const {
    Gf2Basis b(static_cast<int>(gens_.size()));
    for (std::size_t i = 0; i < gens_.size(); ++i) b.add(bits(gens_[i]), static_cast<int>(i));
    return b.solve(bits(P));
}

int StabilizerState::membership(const Pauli &P) const {
    auto c = decompose(P);
    if (!c) return 0;
    Pauli prod(size());
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if ((*c)[i]) prod = prod * gens_[i];
    int d = ((prod.phase - P.phase) % 4 + 4) % 4;
    if (d == 0) return 1;
    if (d == 2) return -1;
    throw UnsupportedSpec("non-Hermitian membership query");
}

void StabilizerState::project(const Pauli &P) {
    if (P.size() != size()) throw LabelMismatch("projector size mismatch");
    int first = -1;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        if (gens_[i].commutes(P)) continue;
        if (first < 0) first = static_cast<int>(i);
        else gens_[i] = gens_[i] * gens_[first];
    }
    if (first >= 0) {
        gens_[first] = P;
        return;
    }
    int m = membership(P);
    if (m == -1) throw NullState("projection onto " + P.str() + " annihilates the state");
    if (m == 0) gens_.push_back(P);
}

void StabilizerState::contract(const std::string &a, const std::string &b) {
    int ia = leg_index(a), ib = leg_index(b);
    if (ia < 0 || ib < 0 || ia == ib) throw LabelMismatch("bad contraction legs " + a + ", " + b);
    Pauli XX(size()), ZZ(size());
    XX.x[ia] = XX.x[ib] = 1;
    ZZ.z[ia] = ZZ.z[ib] = 1;
    project(XX);
    project(ZZ);
    std::vector<Pauli> cleaned;
    for (auto g : gens_) {
        if (g.x[ia]) g = g * XX;
        if (g.z[ia]) g = g * ZZ;
        if (g.x[ib] || g.z[ib]) throw NotIsometryAfterContraction("generator does not commute with the Bell pair");
        cleaned.push_back(g);
    }
    std::vector<int> keep;
    for (int i = 0; i < size(); ++i)
        if (i != ia && i != ib) keep.push_back(i);
    std::vector<Pauli> gens;
    for (const auto &g : cleaned) {
        if (g.is_identity()) {
            if (g.phase != 0) throw NullState("contraction annihilates the state");
            continue;
        }
        gens.push_back(g.restrict(keep));
    }
    std::vector<Leg> legs;
    for (int i : keep) legs.push_back(legs_[i]);
    legs_ = std::move(legs);
    gens_ = static_cast<int>(gens.size()) == size() ? std::move(gens) : independent_subset(gens);
    if (static_cast<int>(gens_.size()) != size())
        throw NotIsometryAfterContraction("contraction lost stabilizer rank");
}

int StabilizerState::entropy_bits(const std::vector<int> &legs) const {
    std::set<int> A(legs.begin(), legs.end());
    std::vector<int> comp;
    for (int i = 0; i < size(); ++i)
        if (!A.count(i)) comp.push_back(i);
    std::vector<Row> rows;
    for (const auto &g : gens_) rows.push_back(bits(g.restrict(comp)));
    return static_cast<int>(A.size()) - static_cast<int>(gens_.size()) + gf2_rank(rows);
}

bool StabilizerState::is_isometry() const {
    auto out = outputs();
    std::vector<Row> rows;
    for (const auto &g : gens_) rows.push_back(bits(g.restrict(out)));
    return gf2_rank(rows) == static_cast<int>(gens_.size());
}

std::vector<Pauli> StabilizerState::canonical() const {
    std::vector<Pauli> g = gens_;
    std::size_t row = 0;
    for (int col = 0; col < 2 * size() && row < g.size(); ++col) {
        auto bit = [&](const Pauli &p) { return col % 2 ? p.z[col / 2] : p.x[col / 2]; };
        std::size_t piv = row;
        while (piv < g.size() && !bit(g[piv])) ++piv;
        if (piv == g.size()) continue;
        std::swap(g[row], g[piv]);
        for (std::size_t r = 0; r < g.size(); ++r)
            if (r != row && bit(g[r])) g[r] = g[r] * g[row];
        ++row;
    }
    return g;
}

bool StabilizerState::same_state(const StabilizerState &o) const {
    if (size() != o.size()) return false;
    for (int i = 0; i < size(); ++i)
        if (legs_[i].label != o.legs_[i].label) return false;
    return canonical() == o.canonical();
}

Vec StabilizerState::dense_state(unsigned seed) const {
    check_cap(1LL << size(), "dense stabilizer state");
    std::mt19937 rng(seed);
    std::normal_distribution<double> nd;
    Vec v(1LL << size());
    for (long long i = 0; i < v.size(); ++i) v(i) = cplx(nd(rng), nd(rng));
    for (const auto &g : gens_) v = (v + g.apply(v)) / 2.0;
    double n = v.norm();
    if (n < 1e-10) throw NullState("stabilizer projector annihilated the seed vector");
    v /= n;
    long long k = 0;
    v.cwiseAbs().maxCoeff(&k);
    v *= std::conj(v(k)) / std::abs(v(k));
    return v;
}

Mat StabilizerState::dense_isometry() const {
    Vec c = dense_state();
    auto in = inputs(), out = outputs();
    const int n = size();
    Mat V = Mat::Zero(1LL << out.size(), 1LL << in.size());
    for (long long b = 0; b < c.size(); ++b) {
        long long i = 0, o = 0;
        for (int q : in) i = (i << 1) | ((b >> (n - 1 - q)) & 1);
        for (int q : out) o = (o << 1) | ((b >> (n - 1 - q)) & 1);
        V(o, i) = c(b);
    }
    return V * std::sqrt(double(1LL << in.size()));
}

Pauli StabilizerState::embed(const Pauli &p, const std::vector<int> &qubits) const {
    Pauli r(size());
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        r.x[qubits[i]] = p.x[i];
        r.z[qubits[i]] = p.z[i];
    }
    r.phase = p.phase;
    return r;
}

StabilizerState tensor_product(const StabilizerState &a, const StabilizerState &b) {
    std::vector<Leg> legs = a.legs();
    legs.insert(legs.end(), b.legs().begin(), b.legs().end());
    const int n = a.size() + b.size();
    std::vector<Pauli> gens;
    for (const auto &g : a.generators()) {
        Pauli p(n);
        std::copy(g.x.begin(), g.x.end(), p.x.begin());
        std::copy(g.z.begin(), g.z.end(), p.z.begin());
        p.phase = g.phase;
        gens.push_back(p);
    }
    for (const auto &g : b.generators()) {
        Pauli p(n);
        std::copy(g.x.begin(), g.x.end(), p.x.begin() + a.size());
        std::copy(g.z.begin(), g.z.end(), p.z.begin() + a.size());
        p.phase = g.phase;
        gens.push_back(p);
    }
    return StabilizerState(legs, gens);
}

StabilizerState compose(const StabilizerState &a, const StabilizerState &b,
                        const std::vector<std::pair<std::string, std::string>> &pairs) {
    StabilizerState s = tensor_product(a, b);
    for (const auto &[x, y] : pairs) s.contract(x, y);
    if (!s.is_isometry()) throw NotIsometryAfterContraction("composed network is not an isometry");
    return s;
}

namespace {

StabilizerState six_leg(const std::string &prefix, bool input0) {
    std::vector<Leg> legs;
    for (int i = 0; i < 6; ++i) legs.push_back({prefix + std::to_string(i), i == 0 && input0});
    std::vector<Pauli> gens;
    const std::string base = "XZZXI";
    for (int s = 0; s < 4; ++s) {
        std::string w = "I";
        for (int q = 0; q < 5; ++q) w += base[(q - s + 5) % 5];
        gens.push_back(Pauli::from_string(w));
    }
    gens.push_back(Pauli::from_string("XXXXXX"));
    gens.push_back(Pauli::from_string("ZZZZZZ"));
    return StabilizerState(legs, gens);
}

}  // namespace

StabilizerState perfect_tensor(const std::string &prefix) { return six_leg(prefix, true); }
StabilizerState six_leg_state(const std::string &prefix) { return six_leg(prefix, false); }

StabilizerState copy_tensor_z2(const std::string &prefix) {
    std::vector<Leg> legs{{prefix + "in", true}, {prefix + "o1", false}, {prefix + "o2", false}};
    return StabilizerState(legs, {Pauli::from_string("XXI"), Pauli::from_string("IXX"), Pauli::from_string("ZZZ")});
}

std::optional<Pauli> pauli_reconstruct(const StabilizerState &iso, const Pauli &logical, const std::set<int> &region) {
    auto in = iso.inputs();
    if (logical.size() != static_cast<int>(in.size())) throw LabelMismatch("logical Pauli size mismatch");
    const int n = iso.size();
    Pauli target = iso.embed(logical.inverse().transpose(), in);
    // constrained columns: inputs (match target) and outputs outside region (zero)
    std::vector<int> cols = in;
    for (int q : iso.outputs())
        if (!region.count(q)) cols.push_back(q);
    const auto &gens = iso.generators();
    Gf2Basis b(static_cast<int>(gens.size()));
    for (std::size_t i = 0; i < gens.size(); ++i) b.add(bits(gens[i].restrict(cols)), static_cast<int>(i));
    auto c = b.solve(bits(target.restrict(cols)));
    if (!c) return std::nullopt;
    Pauli g(n);
    for (std::size_t i = 0; i < gens.size(); ++i)
        if ((*c)[i]) g = g * gens[i];
    // g = i^(p - q) T (x) B
    Pauli out(n);
    for (int q : iso.outputs()) {
        out.x[q] = g.x[q];
        out.z[q] = g.z[q];
    }
    out.phase = ((g.phase - target.phase) % 4 + 4) & 3;
    return out;
}

std::vector<std::optional<Pauli>> pauli_reconstruct_many(const StabilizerState &iso, const std::vector<Pauli> &logicals,
                                                         const std::set<int> &region) {
    auto in = iso.inputs();
    const int n = iso.size();
    std::vector<int> cols = in;
    for (int q : iso.outputs())
        if (!region.count(q)) cols.push_back(q);
    const auto &gens = iso.generators();
    Gf2Basis b(static_cast<int>(gens.size()));
    for (std::size_t i = 0; i < gens.size(); ++i) b.add(bits(gens[i].restrict(cols)), static_cast<int>(i));
    std::vector<std::optional<Pauli>> out;
    for (const auto &logical : logicals) {
        if (logical.size() != static_cast<int>(in.size())) throw LabelMismatch("logical Pauli size mismatch");
        Pauli target = iso.embed(logical.inverse().transpose(), in);
        auto c = b.solve(bits(target.restrict(cols)));
        if (!c) {
            out.push_back(std::nullopt);
            continue;
        }
        Pauli g(n);
        for (std::size_t i = 0; i < gens.size(); ++i)
            if ((*c)[i]) g = g * gens[i];
        Pauli r(n);
        for (int q : iso.outputs()) {
            r.x[q] = g.x[q];
            r.z[q] = g.z[q];
        }
        r.phase = ((g.phase - target.phase) % 4 + 4) & 3;
        out.push_back(r);
    }
    return out;
}

std::optional<Pauli> find_stabilizer_matching(const StabilizerState &s, const Pauli &target, const std::set<int> &free_legs) {
    std::vector<int> cols;
    for (int q = 0; q < s.size(); ++q)
        if (!free_legs.count(q)) cols.push_back(q);
    const auto &gens = s.generators();
    Gf2Basis b(static_cast<int>(gens.size()));
    for (std::size_t i = 0; i < gens.size(); ++i) b.add(bits(gens[i].restrict(cols)), static_cast<int>(i));
    auto c = b.solve(bits(target.restrict(cols)));
    if (!c) return std::nullopt;
    Pauli g(s.size());
    for (std::size_t i = 0; i < gens.size(); ++i)
        if ((*c)[i]) g = g * gens[i];
    return g;
}

StabilizerState chain(const StabilizerState &inner, const StabilizerState &outer) {
    StabilizerState a = inner, b = outer;
    std::vector<std::pair<std::string, std::string>> pairs;
    for (int q : inner.outputs()) {
        const std::string &l = inner.legs()[q].label;
        int j = outer.leg_index(l);
        if (j < 0 || !outer.legs()[j].input) throw LabelMismatch("no input " + l + " on the outer map");
        a.relabel(l, "#a" + l);
        b.relabel(l, "#b" + l);
        pairs.emplace_back("#a" + l, "#b" + l);
    }
    StabilizerState s = tensor_product(a, b);
    for (const auto &[x, y] : pairs) s.contract(x, y);
    return s;
}

StabilizerState adjoint_map(const StabilizerState &s) {
    std::vector<Leg> legs = s.legs();
    for (auto &l : legs) l.input = !l.input;
    std::vector<Pauli> gens = s.generators();
    for (auto &g : gens) g.phase = (4 - (g.phase & 3)) & 3;
    return StabilizerState(legs, gens);
}

std::vector<std::vector<std::uint8_t>> gf2_nullspace(const std::vector<std::vector<std::uint8_t>> &rows, int ncols) {
    std::vector<Row> m = rows;
    std::vector<int> pivcol;
    std::size_t r = 0;
    for (int c = 0; c < ncols && r < m.size(); ++c) {
        std::size_t p = r;
        while (p < m.size() && !m[p][c]) ++p;
        if (p == m.size()) continue;
        std::swap(m[r], m[p]);
        for (std::size_t i = 0; i < m.size(); ++i)
            if (i != r && m[i][c])
                for (int k = 0; k < ncols; ++k) m[i][k] ^= m[r][k];
        pivcol.push_back(c);
        ++r;
    }
    std::vector<char> is_piv(ncols, 0);
    for (int c : pivcol) is_piv[c] = 1;
    std::vector<Row> out;
    for (int f = 0; f < ncols; ++f) {
        if (is_piv[f]) continue;
        Row x(ncols, 0);
        x[f] = 1;
        for (std::size_t i = 0; i < pivcol.size(); ++i)
            if (m[i][f]) x[pivcol[i]] = 1;
        out.push_back(x);
    }
    return out;
}

std::vector<Pauli> independent_subset(const std::vector<Pauli> &ps) {
    std::vector<Pauli> out;
    if (ps.empty()) return out;
    Gf2Basis b(static_cast<int>(ps.size()));
    for (std::size_t i = 0; i < ps.size(); ++i)
        if (b.add(bits(ps[i]), static_cast<int>(i))) out.push_back(ps[i]);
    return out;
}

std::vector<Pauli> z2_gauge_projector_tableau(const LabeledGraph &g, const std::set<int> &vertex_qubits) {
    std::map<int, int> vq;
    int n = 0;
    for (int v : vertex_qubits) vq[v] = n++;
    const int ne = static_cast<int>(g.edges().size());
    std::vector<Pauli> out;
    for (int v : g.V1()) {
        Pauli p(n + ne);
        if (vq.count(v)) p.x[vq[v]] = 1;
        for (int e : g.incident(v)) p.x[n + e] = 1;
        out.push_back(p);
    }
    return independent_subset(out);
}

}  // namespace hqg
