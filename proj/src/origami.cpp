#include "ov/origami.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

namespace ov::origami {

Perm::Perm(int d) {
    if (d < 0) throw std::invalid_argument("Perm: negative degree");
    img_.resize(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) img_[static_cast<std::size_t>(i)] = i;
}

Perm::Perm(std::vector<int> images0) : img_(std::move(images0)) {
    std::vector<char> seen(img_.size(), 0);
    for (int v : img_) {
        if (v < 0 || v >= static_cast<int>(img_.size()) || seen[static_cast<std::size_t>(v)])
            throw std::invalid_argument("Perm: image array is not a bijection");
        seen[static_cast<std::size_t>(v)] = 1;
    }
}

Perm Perm::inverse() const {
    std::vector<int> inv(img_.size());
    for (int i = 0; i < degree(); ++i) inv[static_cast<std::size_t>(img_[static_cast<std::size_t>(i)])] = i;
    return Perm(std::move(inv));
}

Perm Perm::compose(const Perm& then) const {
    if (degree() != then.degree()) throw std::invalid_argument("Perm: degree mismatch");
    std::vector<int> out(img_.size());
    for (int i = 0; i < degree(); ++i) out[static_cast<std::size_t>(i)] = then.apply(apply(i));
    return Perm(std::move(out));
}

std::vector<std::vector<int>> Perm::cycles() const {
    std::vector<std::vector<int>> out;
    std::vector<char> seen(img_.size(), 0);
    for (int i = 0; i < degree(); ++i) {
        if (seen[static_cast<std::size_t>(i)]) continue;
        std::vector<int> cyc;
        int j = i;
        while (!seen[static_cast<std::size_t>(j)]) {
            seen[static_cast<std::size_t>(j)] = 1;
            cyc.push_back(j);
            j = apply(j);
        }
        out.push_back(std::move(cyc));
    }
    return out;
}

std::string Perm::cycle_string() const {
    std::ostringstream os;
    bool any = false;
    for (const auto& cyc : cycles()) {
        if (cyc.size() < 2) continue;
        any = true;
        os << "(";
        for (std::size_t k = 0; k < cyc.size(); ++k) os << (k ? " " : "") << cyc[k] + 1;
        os << ")";
    }
    if (!any) return "()";
    return os.str();
}

Perm Perm::from_cycles(const std::string& text, int d) {
    std::vector<int> img(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) img[static_cast<std::size_t>(i)] = i;
    std::size_t pos = 0;
    auto skip_ws = [&] { while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos; };
    skip_ws();
    while (pos < text.size()) {
        if (text[pos] != '(') throw std::invalid_argument("Perm: expected '(' in cycle notation");
        ++pos;
        std::vector<int> cyc;
        for (;;) {
            skip_ws();
            if (pos >= text.size()) throw std::invalid_argument("Perm: unterminated cycle");
            if (text[pos] == ')') { ++pos; break; }
            if (text[pos] == ',') { ++pos; continue; }
            std::size_t used = 0;
            int v = std::stoi(text.substr(pos), &used);
            pos += used;
            if (v < 1 || v > d) throw std::invalid_argument("Perm: point out of range in cycle");
            cyc.push_back(v - 1);
        }
        for (std::size_t k = 0; k < cyc.size(); ++k) {
            int from = cyc[k];
            int to = cyc[(k + 1) % cyc.size()];
            if (img[static_cast<std::size_t>(from)] != from)
                throw std::invalid_argument("Perm: point repeated across cycles");
            img[static_cast<std::size_t>(from)] = to;
        }
        skip_ws();
    }
    return Perm(std::move(img));
}

Perm Perm::from_images(const std::string& text) {
    std::vector<int> img;
    std::size_t pos = text.find('[');
    if (pos == std::string::npos) throw std::invalid_argument("Perm: expected '[' in image notation");
    ++pos;
    for (;;) {
        while (pos < text.size() && (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == ',')) ++pos;
        if (pos >= text.size()) throw std::invalid_argument("Perm: unterminated image list");
        if (text[pos] == ']') break;
        std::size_t used = 0;
        int v = std::stoi(text.substr(pos), &used);
        pos += used;
        img.push_back(v - 1);
    }
    return Perm(std::move(img));
}

Origami new_origami(int d, Perm sigma_a, Perm sigma_b) {
    if (d < 1) throw std::invalid_argument("origami: degree must be >= 1");
    if (sigma_a.degree() != d || sigma_b.degree() != d)
        throw std::invalid_argument("origami: permutation degree does not match d");
    // transitivity of <sigma_a, sigma_b>
    std::vector<int> comp(static_cast<std::size_t>(d), -1);
    std::queue<int> q;
    comp[0] = 0;
    q.push(0);
    int reached = 1;
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (const Perm* p : {&sigma_a, &sigma_b}) {
            int v = p->apply(u);
            if (comp[static_cast<std::size_t>(v)] < 0) {
                comp[static_cast<std::size_t>(v)] = 0;
                ++reached;
                q.push(v);
            }
        }
    }
    if (reached != d) {
        // report the orbit partition as diagnostic
        std::vector<int> orbit_of(static_cast<std::size_t>(d), -1);
        int norb = 0;
        for (int s = 0; s < d; ++s) {
            if (orbit_of[static_cast<std::size_t>(s)] >= 0) continue;
            orbit_of[static_cast<std::size_t>(s)] = norb;
            std::queue<int> qq;
            qq.push(s);
            while (!qq.empty()) {
                int u = qq.front();
                qq.pop();
                for (const Perm* p : {&sigma_a, &sigma_b}) {
                    int v = p->apply(u);
                    if (orbit_of[static_cast<std::size_t>(v)] < 0) {
                        orbit_of[static_cast<std::size_t>(v)] = norb;
                        qq.push(v);
                    }
                }
            }
            ++norb;
        }
        std::ostringstream os;
        os << "origami: pair is not transitive; orbits:";
        for (int o = 0; o < norb; ++o) {
            os << " {";
            bool first = true;
            for (int i = 0; i < d; ++i)
                if (orbit_of[static_cast<std::size_t>(i)] == o) {
                    os << (first ? "" : " ") << i + 1;
                    first = false;
                }
            os << "}";
        }
        throw std::invalid_argument(os.str());
    }
    return Origami{d, std::move(sigma_a), std::move(sigma_b)};
}

CanonicalForm canonical_form(const Origami& o) {
    const int d = o.d;
    std::vector<int> best_key;
    Perm best_relabel;
    for (int start = 0; start < d; ++start) {
        // BFS relabeling: discovery order from `start`, x-edge before y-edge.
        std::vector<int> label(static_cast<std::size_t>(d), -1);
        std::vector<int> order;
        order.reserve(static_cast<std::size_t>(d));
        label[static_cast<std::size_t>(start)] = 0;
        order.push_back(start);
        for (std::size_t head = 0; head < order.size(); ++head) {
            int u = order[head];
            for (const Perm* p : {&o.sigma_a, &o.sigma_b}) {
                int v = p->apply(u);
                if (label[static_cast<std::size_t>(v)] < 0) {
                    label[static_cast<std::size_t>(v)] = static_cast<int>(order.size());
                    order.push_back(v);
                }
            }
        }
        std::vector<int> key;
        key.reserve(static_cast<std::size_t>(2 * d));
        for (int newi = 0; newi < d; ++newi)
            key.push_back(label[static_cast<std::size_t>(o.sigma_a.apply(order[static_cast<std::size_t>(newi)]))]);
        for (int newi = 0; newi < d; ++newi)
            key.push_back(label[static_cast<std::size_t>(o.sigma_b.apply(order[static_cast<std::size_t>(newi)]))]);
        if (best_key.empty() || key < best_key) {
            best_key = std::move(key);
            best_relabel = Perm(label);
        }
    }
    std::vector<int> sa(best_key.begin(), best_key.begin() + d);
    std::vector<int> sb(best_key.begin() + d, best_key.end());
    CanonicalForm cf;
    cf.form = Origami{d, Perm(std::move(sa)), Perm(std::move(sb))};
    cf.relabeling = std::move(best_relabel);
    cf.key = std::move(best_key);
    return cf;
}

Perm vertex_permutation(const Origami& o) {
    return o.sigma_a.compose(o.sigma_b).compose(o.sigma_a.inverse()).compose(o.sigma_b.inverse());
}

std::vector<int> vertex_structure(const Origami& o) {
    std::vector<int> lens;
    for (const auto& c : vertex_permutation(o).cycles()) lens.push_back(static_cast<int>(c.size()));
    std::sort(lens.begin(), lens.end());
    return lens;
}

int surface_genus(const Origami& o) {
    const int c = static_cast<int>(vertex_structure(o).size());
    const int diff = o.d - c;
    if (diff % 2 != 0) throw std::logic_error("surface_genus: d - c must be even");
    return 1 + diff / 2;
}

int ramification_points(const Origami& o) {
    int count = 0;
    for (int len : vertex_structure(o))
        if (len > 1) ++count;
    return count;
}

Origami parse_origami(const std::string& text) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    for (;;) {
        std::size_t semi = text.find(';', pos);
        if (semi == std::string::npos) {
            parts.push_back(text.substr(pos));
            break;
        }
        parts.push_back(text.substr(pos, semi - pos));
        pos = semi + 1;
    }
    if (parts.size() != 3)
        throw std::invalid_argument("origami: expected \"d; sigma_a; sigma_b\"");
    auto trim = [](std::string s) {
        std::size_t b = s.find_first_not_of(" \t");
        std::size_t e = s.find_last_not_of(" \t");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    int d = std::stoi(trim(parts[0]));
    auto parse_perm = [&](const std::string& raw) {
        std::string s = trim(raw);
        if (!s.empty() && s[0] == '[') {
            Perm p = Perm::from_images(s);
            if (p.degree() != d) throw std::invalid_argument("origami: image list has wrong length");
            return p;
        }
        return Perm::from_cycles(s, d);
    };
    return new_origami(d, parse_perm(parts[1]), parse_perm(parts[2]));
}

std::string origami_to_text(const Origami& o) {
    std::ostringstream os;
    os << o.d << "; " << o.sigma_a.cycle_string() << "; " << o.sigma_b.cycle_string();
    return os.str();
}

std::string origami_to_dot(const Origami& o) {
    std::ostringstream os;
    os << "digraph origami {\n";
    for (int i = 0; i < o.d; ++i)
        os << "  q" << i + 1 << " -> q" << o.sigma_a.apply(i) + 1 << " [label=\"x\"];\n";
    for (int i = 0; i < o.d; ++i)
        os << "  q" << i + 1 << " -> q" << o.sigma_b.apply(i) + 1 << " [label=\"y\", style=dashed];\n";
    os << "}\n";
    return os.str();
}

}  // namespace ov::origami
