#include "shc/voronoi.hpp"

#include <stdexcept>

namespace shc::voronoi {

std::vector<IntVector> an_vectors(std::size_t n)
{
    std::vector<IntVector> out;
    for (std::size_t i = 0; i < n; ++i) {
        IntVector e(n, 0);
        e[i] = 1;
        out.push_back(std::move(e));
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            IntVector v(n, 0);
            v[i] = 1;
            v[j] = -1;
            out.push_back(std::move(v));
        }
    return out;
}

namespace {

// Columns of the printed vertex matrices.

const std::vector<IntVector> d4_vectors{
    {-1, -1, 0, 1},
    {-1, 0, -1, 1},
    {-1, 0, 0, 0},
    {-1, 0, 0, 1},
    {-1, 0, 1, 0},
    {-1, 1, 0, 0},
    {0, -1, -1, 1},
    {0, -1, 0, 0},
    {0, -1, 0, 1},
    {0, -1, 1, 0},
    {0, 0, -1, 0},
    {0, 0, -1, 1}};

const std::vector<IntVector> a5_plus3_vectors{
    {1, 1, 1, 1, 1},
    {0, 1, 1, 1, 1},
    {1, 0, 1, 1, 1},
    {0, 0, 1, 0, 1},
    {0, 0, 1, 1, 0},
    {0, 0, 1, 0, 0},
    {1, 1, 0, 1, 1},
    {0, 1, 0, 0, 1},
    {1, 0, 0, 0, 1},
    {0, 0, 0, 0, 1},
    {0, 1, 0, 1, 0},
    {0, 1, 0, 0, 0},
    {1, 0, 0, 1, 0},
    {0, 0, 0, 1, 0},
    {1, 0, 0, 0, 0}};

const std::vector<IntVector> d5_vectors{
    {0, 0, 0, 1, 0},
    {1, 0, 0, -1, 0},
    {0, 1, 0, -1, 0},
    {0, 0, 1, -1, 0},
    {0, 0, 1, 1, -1},
    {0, 1, 0, 1, -1},
    {1, 0, 0, 1, -1},
    {0, 0, 0, 1, -1},
    {1, 0, 0, 0, -1},
    {0, 1, 0, 0, -1},
    {1, 1, 0, 0, -1},
    {0, 0, 1, 0, -1},
    {1, 0, 1, 0, -1},
    {0, 1, 1, 0, -1},
    {0, 0, 1, 0, 0},
    {1, 0, -1, 0, 0},
    {0, 1, -1, 0, 0},
    {0, 1, 0, 0, 0},
    {1, -1, 0, 0, 0},
    {1, 0, 0, 0, 0}};

}  // namespace

std::vector<DatasetForm> builtin_dataset(std::size_t n)
{
    switch (n) {
    case 2:
        return {{"A2", 2, an_vectors(2)}};
    case 3:
        return {{"A3", 3, an_vectors(3)}};
    case 4:
        return {{"A4", 4, an_vectors(4)}, {"D4", 4, d4_vectors}};
    case 5:
        return {{"A5", 5, an_vectors(5)}, {"A5+3", 5, a5_plus3_vectors}, {"D5", 5, d5_vectors}};
    default:
        throw std::invalid_argument("no built-in forms for n = " + std::to_string(n));
    }
}

DatasetForm find_dataset_form(const std::string& name)
{
    for (std::size_t n = 2; n <= 5; ++n)
        for (auto& f : builtin_dataset(n))
            if (f.name == name) return f;
    throw std::invalid_argument("unknown form " + name);
}

const std::vector<polytope::Simplex>& d4_subdivision()
{
    static const std::vector<polytope::Simplex> cones{
        {0, 1, 2, 3, 4, 5, 6, 7, 8, 10},
        {0, 1, 3, 4, 5, 6, 7, 8, 9, 10},
        {0, 1, 2, 4, 5, 6, 7, 8, 9, 10},
        {0, 1, 2, 3, 4, 5, 7, 8, 9, 10},
        {1, 2, 3, 4, 5, 6, 7, 8, 10, 11},
        {1, 3, 4, 5, 6, 7, 8, 9, 10, 11},
        {1, 2, 4, 5, 6, 7, 8, 9, 10, 11},
        {1, 2, 3, 4, 5, 7, 8, 9, 10, 11},
        {0, 1, 2, 3, 4, 6, 7, 8, 10, 11},
        {0, 1, 3, 4, 6, 7, 8, 9, 10, 11},
        {0, 1, 2, 4, 6, 7, 8, 9, 10, 11},
        {0, 1, 2, 3, 4, 7, 8, 9, 10, 11},
        {0, 1, 2, 3, 4, 5, 7, 8, 9, 11},
        {0, 1, 2, 4, 5, 6, 7, 8, 9, 11},
        {0, 1, 3, 4, 5, 6, 7, 8, 9, 11},
        {0, 1, 2, 3, 4, 5, 6, 7, 8, 11}};
    return cones;
}

const D5FacetData& d5_facet_data()
{
    static const D5FacetData data{
        {0, 1, 3, 4, 5, 6, 7, 8, 9, 11, 12, 13, 14, 15, 18, 19},
        {
            {0, 1, 3, 4, 5, 6, 7, 8, 9, 11, 12, 13, 14, 18},
            {0, 1, 3, 4, 5, 6, 7, 8, 9, 11, 13, 14, 15, 18},
            {0, 1, 3, 4, 5, 6, 7, 9, 11, 12, 13, 14, 18, 19},
            {0, 1, 3, 4, 5, 6, 7, 9, 11, 13, 14, 15, 18, 19},
            {0, 1, 3, 4, 5, 6, 8, 9, 11, 12, 13, 14, 15, 18},
            {0, 1, 3, 4, 5, 6, 9, 11, 12, 13, 14, 15, 18, 19},
            {0, 1, 3, 5, 6, 7, 8, 9, 11, 12, 13, 14, 18, 19},
            {0, 1, 3, 5, 6, 7, 8, 9, 11, 13, 14, 15, 18, 19},
            {0, 1, 3, 5, 6, 8, 9, 11, 12, 13, 14, 15, 18, 19},
            {0, 1, 4, 5, 6, 7, 8, 9, 11, 12, 13, 14, 18, 19},
            {0, 1, 4, 5, 6, 7, 8, 9, 11, 13, 14, 15, 18, 19},
            {0, 1, 4, 5, 6, 8, 9, 11, 12, 13, 14, 15, 18, 19},
            {1, 3, 4, 5, 6, 7, 8, 9, 11, 12, 13, 14, 15, 18},
            {1, 3, 4, 5, 6, 7, 9, 11, 12, 13, 14, 15, 18, 19},
            {1, 3, 5, 6, 7, 8, 9, 11, 12, 13, 14, 15, 18, 19},
            {1, 4, 5, 6, 7, 8, 9, 11, 12, 13, 14, 15, 18, 19}},
        {
            {0, 1, 3, 4, 5, 6, 7, 8, 9, 11, 12, 13, 15, 18},
            {0, 1, 3, 4, 5, 6, 7, 8, 9, 12, 13, 14, 15, 18},
            {0, 1, 3, 4, 5, 6, 7, 9, 11, 12, 13, 15, 18, 19},
            {0, 1, 3, 4, 5, 6, 7, 9, 12, 13, 14, 15, 18, 19},
            {0, 1, 3, 4, 5, 7, 8, 9, 11, 12, 13, 14, 15, 18},
            {0, 1, 3, 4, 5, 7, 9, 11, 12, 13, 14, 15, 18, 19},
            {0, 1, 3, 5, 6, 7, 8, 9, 11, 12, 13, 15, 18, 19},
            {0, 1, 3, 5, 6, 7, 8, 9, 12, 13, 14, 15, 18, 19},
            {0, 1, 3, 5, 7, 8, 9, 11, 12, 13, 14, 15, 18, 19},
            {0, 1, 4, 5, 6, 7, 8, 9, 11, 12, 13, 15, 18, 19},
            {0, 1, 4, 5, 6, 7, 8, 9, 12, 13, 14, 15, 18, 19},
            {0, 1, 4, 5, 7, 8, 9, 11, 12, 13, 14, 15, 18, 19},
            {0, 3, 4, 5, 6, 7, 8, 9, 11, 12, 13, 14, 15, 18},
            {0, 3, 4, 5, 6, 7, 9, 11, 12, 13, 14, 15, 18, 19},
            {0, 3, 5, 6, 7, 8, 9, 11, 12, 13, 14, 15, 18, 19},
            {0, 4, 5, 6, 7, 8, 9, 11, 12, 13, 14, 15, 18, 19}},
        {0, 1, 5, 6, 9, 10, 12, 13},
        {
            {0, 1, 5, 6, 9, 10, 13},
            {0, 1, 5, 6, 10, 12, 13},
            {0, 1, 6, 9, 10, 12, 13},
            {0, 5, 6, 9, 10, 12, 13}},
        {
            {0, 1, 5, 6, 9, 10, 12},
            {0, 1, 5, 6, 9, 12, 13},
            {0, 1, 5, 9, 10, 12, 13},
            {1, 5, 6, 9, 10, 12, 13}},
    };
    return data;
}

}  // namespace shc::voronoi
