#pragma once

#include <string>
#include <vector>

#include "lw/polytope.hpp"
#include "lw/surgery.hpp"

namespace corpus {

using lw::Polytope;
using lw::Rat;
using lw::Vec;

inline Polytope make(int dim, std::vector<Vec> pts) { return Polytope(dim, std::move(pts)); }

inline Polytope point(int ambient = 0) { return make(ambient, {Vec(ambient)}); }

inline Polytope simplex(int n) {
    std::vector<Vec> pts{Vec(n)};
    for (int i = 0; i < n; ++i) {
        Vec e(n);
        e[i] = 1;
        pts.push_back(e);
    }
    return make(n, pts);
}

inline Polytope cube(int n) {
    std::vector<Vec> pts;
    for (int m = 0; m < (1 << n); ++m) {
        Vec v(n);
        for (int i = 0; i < n; ++i) v[i] = (m >> i) & 1;
        pts.push_back(v);
    }
    return make(n, pts);
}

inline Polytope segment() { return cube(1); }
inline Polytope square() { return cube(2); }
inline Polytope triangle() { return simplex(2); }

// conv{(+-1,+-1,0), (0,0,1)}
inline Polytope square_pyramid() {
    return make(3, {{-1, -1, 0}, {1, -1, 0}, {-1, 1, 0}, {1, 1, 0}, {0, 0, 1}});
}

inline Polytope octahedron() {
    return make(3, {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}});
}

inline Polytope prism() { return lw::product(triangle(), segment()); }

struct Named {
    std::string name;
    Polytope p;
};

// Small corpus used by property tests.
inline std::vector<Named> small_corpus() {
    return {{"segment", segment()},
            {"triangle", triangle()},
            {"square", square()},
            {"tetrahedron", simplex(3)},
            {"cube", cube(3)},
            {"square_pyramid", square_pyramid()},
            {"prism", prism()},
            {"octahedron", octahedron()}};
}

}  // namespace corpus
