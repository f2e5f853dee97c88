#pragma once

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <random>
#include <string>
#include <vector>

#include "error.hpp"
#include "expression.hpp"
#include "fib_graph.hpp"
#include "modular.hpp"
#include "polynomial.hpp"

namespace fibexpr
{

/// Outcome of checking an expression against the n-vertex path polynomial.
struct verdict
{
  bool equivalent = false;
  std::string mode;
  std::string detail;
  std::uint64_t monomials = 0; // expand mode
  std::uint64_t trials = 0;    // modeval mode
  std::uint64_t failed_trials = 0;
};

/*! \brief Exact check: the expansion of `e` must equal the path set.

  A malformed factoring (a monomial produced twice, a label multiplied by
  itself) is reported as inequivalent; only `size_exceeded` propagates.
*/
inline verdict verify_expand( expr const& e, vertex n, expand_options const& expand_opts = {},
                              path_options const& path_opts = {} )
{
  verdict result;
  result.mode = "expand";
  monomial_set const expected( enumerate_paths( n, path_opts ) );

  monomial_set actual;
  try
  {
    actual = expand( e, expand_opts );
  }
  catch ( error const& ex )
  {
    if ( ex.kind() == error_kind::size_exceeded )
      throw;
    result.detail = ex.what();
    return result;
  }
  result.monomials = actual.size();

  std::vector<monomial> missing, extra;
  std::set_difference( expected.begin(), expected.end(), actual.begin(), actual.end(), std::back_inserter( missing ) );
  std::set_difference( actual.begin(), actual.end(), expected.begin(), expected.end(), std::back_inserter( extra ) );
  result.equivalent = missing.empty() && extra.empty();
  if ( result.equivalent )
  {
    result.detail = std::to_string( actual.size() ) + " monomials";
    return result;
  }

  auto sample = []( std::vector<monomial> const& list ) {
    std::string text;
    for ( std::size_t k = 0; k < list.size() && k < 3; ++k )
      text += ( k ? " " : "" ) + to_string( list[k] );
    return list.size() > 3 ? text + " ..." : text;
  };
  result.detail = std::to_string( missing.size() ) + " missing, " + std::to_string( extra.size() ) + " extra";
  if ( !missing.empty() )
    result.detail += "; missing: " + sample( missing );
  if ( !extra.empty() )
    result.detail += "; extra: " + sample( extra );
  return result;
}

/*! \brief Probabilistic check against the linear-time path-polynomial oracle.

  Each trial assigns uniform residues to every edge of the graph and every
  label of `e`. Both sides are polynomials of degree at most n - 1, so an
  inequivalent pair agrees on one trial with probability at most (n-1)/prime.
*/
inline verdict verify_modeval( expr const& e, vertex n, std::uint64_t prime, std::uint64_t trials, std::uint64_t seed )
{
  verdict result;
  result.mode = "modeval";
  result.trials = trials;

  auto labels = edges( n );
  for ( auto l : labels_of( e ) )
    if ( !is_edge_of( l, n ) )
      labels.push_back( l );

  std::mt19937_64 rng( seed );
  for ( std::uint64_t t = 0; t < trials; ++t )
  {
    auto const values = random_assignment( labels, prime, rng );
    if ( evaluate_mod( e, values ) != oracle_eval_mod( n, values ) )
      ++result.failed_trials;
  }
  result.equivalent = result.failed_trials == 0 && trials > 0;
  result.detail = std::to_string( trials - result.failed_trials ) + "/" + std::to_string( trials ) +
                  " trials agree modulo " + std::to_string( prime );
  return result;
}

} // namespace fibexpr
