#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "decomposer.hpp"
#include "expression.hpp"
#include "fib_graph.hpp"
#include "method.hpp"
#include "optimizer.hpp"
#include "polynomial.hpp"
#include "text.hpp"
#include "verify.hpp"

namespace fibexpr::repro
{

struct outcome
{
  bool passed = false;
  std::string detail;
};

struct criterion
{
  int id;
  std::string name;
  double budget_seconds; // 0 = unbounded
  std::function<outcome()> run;
};

struct result
{
  int id;
  std::string name;
  bool passed;
  std::string detail;
  double seconds;
  double budget_seconds;
};

namespace detail
{

inline std::string metrics_text( expr const& e )
{
  return std::to_string( metric_terms( e ) ) + " terms, " + std::to_string( metric_plus( e ) ) + " plus";
}

inline bool has_metrics( expr const& e, std::uint64_t terms, std::uint64_t plus )
{
  return metric_terms( e ) == terms && metric_plus( e ) == plus;
}

inline std::string join( std::vector<std::int64_t> const& values )
{
  std::string text;
  for ( auto v : values )
    text += ( text.empty() ? "" : "," ) + std::to_string( v );
  return text;
}

/// Every method the round-trip and equivalence sweeps cover.
inline std::vector<std::pair<std::string, method>> sweep_methods( bool with_high_tie )
{
  std::vector<std::pair<std::string, method>> list{ { "canonical", method::canonical() },
                                                    { "middle", method::middle() },
                                                    { "leftmost", method::left() },
                                                    { "seeded(1)", method::with_seed( 1 ) },
                                                    { "seeded(2)", method::with_seed( 2 ) },
                                                    { "seeded(3)", method::with_seed( 3 ) },
                                                    { "gd(m=3)", method::gd( 3 ) },
                                                    { "gd(m=4)", method::gd( 4 ) } };
  if ( with_high_tie )
  {
    list.emplace_back( "middle(high)", method::middle( tie::high ) );
    list.emplace_back( "gd(m=3,high)", method::gd( 3, tie::high ) );
  }
  return list;
}

} // namespace detail

/// The reproduction criteria, in order.
inline std::vector<criterion> criteria()
{
  using detail::has_metrics;
  using detail::metrics_text;
  std::vector<criterion> list;

  list.push_back( { 1, "canonical n=9: 201 terms, 33 plus, 34 path monomials", 1.0, [] {
                     auto const e = canonical_expression( 9 );
                     auto const expanded = expand( e );
                     bool ok = has_metrics( e, 201, 33 ) && expanded.size() == 34 &&
                               expanded == monomial_set( enumerate_paths( 9 ) );
                     return outcome{ ok, metrics_text( e ) + ", " + std::to_string( expanded.size() ) + " monomials" };
                   } } );

  list.push_back( { 2, "optimal n=9: 31 terms, 11 plus", 1.0, [] {
                     auto const e = decompose( 9, middle_low{} );
                     return outcome{ has_metrics( e, 31, 11 ), metrics_text( e ) };
                   } } );

  list.push_back( { 3, "n=7: middle 19/7, first split at 3 gives 20/7", 0.0, [] {
                     auto const middle = decompose( 7, middle_low{} );
                     auto const at3 = decompose( 7, fixed_map{ { { { 1, 7 }, 3 } } } );
                     return outcome{ has_metrics( middle, 19, 7 ) && has_metrics( at3, 20, 7 ),
                                     "middle " + metrics_text( middle ) + "; i=3 " + metrics_text( at3 ) };
                   } } );

  list.push_back( { 4, "measured T/P equal the recurrences for 1 <= n <= 128", 10.0, [] {
                     for ( std::int64_t n = 1; n <= 128; ++n )
                     {
                       auto const e = decompose( n, middle_low{} );
                       if ( !has_metrics( e, recurrence_T( n ), recurrence_P( n ) ) )
                         return outcome{ false, "mismatch at n=" + std::to_string( n ) + ": " + metrics_text( e ) };
                     }
                     return outcome{ true, "128 sizes agree" };
                   } } );

  list.push_back( { 5, "T-argmin is exactly the middle vertex set, all intervals, n <= 63", 30.0, [] {
                     auto const report = verify_middle_optimality( 63 );
                     return outcome{ report.passed(), std::to_string( report.intervals_checked ) + " intervals, " +
                                                          std::to_string( report.violations.size() ) + " violations" };
                   } } );

  list.push_back( { 6, "P minimum equals the middle-split recurrence, 3 <= n <= 63", 0.0, [] {
                     for ( std::int64_t n = 3; n <= 63; ++n )
                       if ( min_metric( n, metric::plus ).min_value( 1, n ) != recurrence_P( n ) )
                         return outcome{ false, "mismatch at n=" + std::to_string( n ) };
                     return outcome{ true, "61 sizes agree" };
                   } } );

  list.push_back( { 7, "special values up to 63 are 7, 13-15, 25-31, 49-63", 0.0, [] {
                     std::vector<std::int64_t> expected{ 7 };
                     for ( auto [lo, hi] : { interval{ 13, 15 }, interval{ 25, 31 }, interval{ 49, 63 } } )
                       for ( auto n = lo; n <= hi; ++n )
                         expected.push_back( n );
                     auto const report = special_values( 63 );
                     std::vector<interval> const groups{ { 7, 7 }, { 13, 15 }, { 25, 31 }, { 49, 63 } };
                     bool ok = report.values == expected && report.groups == groups && report.groups_match;
                     return outcome{ ok, detail::join( report.values ) };
                   } } );

  list.push_back( { 8, "GD with m = n-1 = 8 reduces to the canonical expression", 0.0, [] {
                     auto const e = decompose_gd( 9, { 8, uniform{} } );
                     bool ok = has_metrics( e, 201, 33 ) && expand( e ) == expand( canonical_expression( 9 ) );
                     return outcome{ ok, metrics_text( e ) };
                   } } );

  list.push_back( { 9, "equivalence sweep: expansion for n <= 14, modular trials for n = 100, 512, 1024", 60.0, [] {
                     std::uint64_t checks = 0;
                     for ( auto const& [name, how] : detail::sweep_methods( false ) )
                       for ( std::int64_t n = how.kind == method_kind::canonical ? 2 : 1; n <= 14; ++n, ++checks )
                         if ( auto v = verify_expand( build_expression( n, how ), n ); !v.equivalent )
                           return outcome{ false, name + " n=" + std::to_string( n ) + ": " + v.detail };
                     for ( auto const& [name, how] :
                           { std::pair{ std::string( "middle" ), method::middle() }, std::pair{ std::string( "gd(m=3)" ), method::gd( 3 ) } } )
                       for ( std::int64_t n : { 100, 512, 1024 } )
                       {
                         ++checks;
                         auto v = verify_modeval( build_expression( n, how ), n, default_prime, 32, static_cast<std::uint64_t>( n ) );
                         if ( !v.equivalent )
                           return outcome{ false, name + " n=" + std::to_string( n ) + ": " + v.detail };
                       }
                     return outcome{ true, std::to_string( checks ) + " checks equivalent" };
                   } } );

  list.push_back( { 10, "exponent fits: m=2 in [1.85,2.15], m=3 in [2.06,2.46], m=4 in [2.3,2.7]", 0.0, [] {
                     auto const e2 = exponent_fit( 2, { 64, 128, 256, 512 } );
                     auto const e3 = exponent_fit( 3, { 28, 82, 244, 730 } );
                     auto const e4 = exponent_fit( 4, { 64, 128, 256, 512 } );
                     bool ok = e2 >= 1.85 && e2 <= 2.15 && e3 >= 2.06 && e3 <= 2.46 && e4 >= 2.3 && e4 <= 2.7;
                     return outcome{ ok, "m=2: " + std::to_string( e2 ) + ", m=3: " + std::to_string( e3 ) +
                                             ", m=4: " + std::to_string( e4 ) };
                   } } );

  list.push_back( { 11, "series-parallel example is read-once; the 4-vertex graph expression is not", 0.0, [] {
                     // s -a-> x, x -b,c-> y, s -f-> y, y -d,e-> t
                     auto const la = a( 1 ), lb = a( 2 ), lc = b( 2 ), ld = a( 3 ), le = b( 3 ), lf = b( 1 );
                     auto t = []( label l ) { return expr::term( l ); };
                     auto const sp = sp_series( sp_parallel( sp_series( t( la ), sp_parallel( t( lb ), t( lc ) ) ), t( lf ) ),
                                                sp_parallel( t( ld ), t( le ) ) );
                     monomial_set const expected( { monomial{ la, lb, ld }, monomial{ la, lb, le }, monomial{ la, lc, ld },
                                                    monomial{ la, lc, le }, monomial{ lf, ld }, monomial{ lf, le } } );
                     auto const four = parse( "(a1a2+b1)a3+a1b2" );
                     bool ok = expand( sp ) == expected && is_read_once( sp ) && !is_read_once( four ) &&
                               verify_expand( four, 4 ).equivalent;
                     return outcome{ ok, format( sp ) + " read-once; " + format( four ) + " not" };
                   } } );

  list.push_back( { 12, "parse(format(e)) == e for every generated expression with n <= 32", 0.0, [] {
                     std::uint64_t checked = 0;
                     for ( auto const& [name, how] : detail::sweep_methods( true ) )
                       for ( std::int64_t n = how.kind == method_kind::canonical ? 2 : 1; n <= 32; ++n )
                       {
                         if ( how.kind == method_kind::canonical && path_count( n ) > how.paths.max_paths )
                           break;
                         auto const e = build_expression( n, how );
                         ++checked;
                         if ( !( parse( format( e ) ) == e ) )
                           return outcome{ false, name + " n=" + std::to_string( n ) + " does not round-trip" };
                       }
                     return outcome{ true, std::to_string( checked ) + " expressions round-trip" };
                   } } );

  return list;
}

/// Runs every criterion; a criterion over its time budget fails.
inline std::vector<result> run_all( std::function<void( result const& )> const& on_result = {} )
{
  std::vector<result> results;
  for ( auto const& c : criteria() )
  {
    auto const start = std::chrono::steady_clock::now();
    outcome out;
    try
    {
      out = c.run();
    }
    catch ( std::exception const& ex )
    {
      out = { false, std::string( "exception: " ) + ex.what() };
    }
    auto const seconds = std::chrono::duration<double>( std::chrono::steady_clock::now() - start ).count();
    if ( c.budget_seconds > 0 && seconds > c.budget_seconds )
    {
      out.passed = false;
      out.detail += "; over the " + std::to_string( c.budget_seconds ) + " s budget";
    }
    results.push_back( { c.id, c.name, out.passed, out.detail, seconds, c.budget_seconds } );
    if ( on_result )
      on_result( results.back() );
  }
  return results;
}

} // namespace fibexpr::repro
