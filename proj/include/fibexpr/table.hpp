#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "method.hpp"
#include "modular.hpp"
#include "optimizer.hpp"
#include "verify.hpp"

namespace fibexpr
{

struct table_options
{
  std::int64_t expand_limit = 14; // exact expansion up to this n, modular trials above
  std::uint64_t prime = default_prime;
  std::uint64_t trials = 32;
  std::uint64_t seed = 1;
};

/// Checks `e` for the n-vertex graph, by expansion when n is small enough.
inline verdict check_equivalence( expr const& e, vertex n, table_options const& options )
{
  if ( n <= options.expand_limit )
    return verify_expand( e, n );
  return verify_modeval( e, n, options.prime, options.trials, options.seed );
}

inline complexity_record measure( vertex n, method const& how, table_options const& options = {} )
{
  auto const e = build_expression( n, how );
  auto const predicted = predicted_metrics( n, how );
  complexity_record row;
  row.n = n;
  row.method = to_string( how.kind );
  row.T_measured = metric_terms( e );
  row.P_measured = metric_plus( e );
  row.T_predicted = predicted.terms;
  row.P_predicted = predicted.plus;
  row.equivalent = check_equivalence( e, n, options ).equivalent;
  return row;
}

/// Rows for n = n_min..n_max, ordered by n.
inline std::vector<complexity_record> complexity_table( vertex n_min, vertex n_max, method const& how,
                                                        table_options const& options = {} )
{
  std::vector<complexity_record> rows;
  for ( auto n = n_min; n <= n_max; ++n )
    rows.push_back( measure( n, how, options ) );
  return rows;
}

inline std::string csv_header() { return "n,method,T_measured,P_measured,T_predicted,P_predicted,equivalent"; }

inline std::string to_csv( complexity_record const& row )
{
  return std::to_string( row.n ) + "," + row.method + "," + std::to_string( row.T_measured ) + "," +
         std::to_string( row.P_measured ) + "," + std::to_string( row.T_predicted ) + "," +
         std::to_string( row.P_predicted ) + "," + ( row.equivalent ? "true" : "false" );
}

} // namespace fibexpr
