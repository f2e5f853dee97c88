#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <iterator>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "expression.hpp"

namespace fibexpr
{

/// Set of distinct labels, kept sorted. One per source-to-sink path.
class monomial
{
public:
  monomial() = default;

  /// Throws `repeated_label` if a label occurs twice.
  explicit monomial( std::vector<label> labels ) : labels_( std::move( labels ) )
  {
    std::sort( labels_.begin(), labels_.end() );
    if ( std::adjacent_find( labels_.begin(), labels_.end() ) != labels_.end() )
      throw error( error_kind::repeated_label, "label repeated within a monomial" );
  }

  monomial( std::initializer_list<label> labels ) : monomial( std::vector<label>( labels ) ) {}

  std::vector<label> const& labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return labels_.size(); }
  bool empty() const noexcept { return labels_.empty(); }

  /// Union of two label-disjoint monomials; throws `repeated_label` otherwise.
  friend monomial operator*( monomial const& lhs, monomial const& rhs )
  {
    monomial result;
    result.labels_.reserve( lhs.size() + rhs.size() );
    std::merge( lhs.labels_.begin(), lhs.labels_.end(), rhs.labels_.begin(), rhs.labels_.end(),
                std::back_inserter( result.labels_ ) );
    if ( std::adjacent_find( result.labels_.begin(), result.labels_.end() ) != result.labels_.end() )
      throw error( error_kind::repeated_label, "product repeats a label" );
    return result;
  }

  friend auto operator<=>( monomial const&, monomial const& ) = default;
  friend bool operator==( monomial const&, monomial const& ) = default;

private:
  std::vector<label> labels_;
};

inline std::string to_string( monomial const& m )
{
  if ( m.empty() )
    return "1";
  std::string text;
  for ( auto l : m.labels() )
    text += to_string( l );
  return text;
}

/// Sorted set of distinct monomials with all coefficients 1.
class monomial_set
{
public:
  monomial_set() = default;

  /// Throws `duplicate_monomial` when the input repeats a monomial.
  explicit monomial_set( std::vector<monomial> monomials ) : monomials_( std::move( monomials ) )
  {
    std::sort( monomials_.begin(), monomials_.end() );
    if ( auto it = std::adjacent_find( monomials_.begin(), monomials_.end() ); it != monomials_.end() )
      throw error( error_kind::duplicate_monomial, "monomial " + to_string( *it ) + " arises twice" );
  }

  std::vector<monomial> const& monomials() const noexcept { return monomials_; }
  std::size_t size() const noexcept { return monomials_.size(); }
  bool empty() const noexcept { return monomials_.empty(); }
  auto begin() const noexcept { return monomials_.begin(); }
  auto end() const noexcept { return monomials_.end(); }

  bool contains( monomial const& m ) const { return std::binary_search( monomials_.begin(), monomials_.end(), m ); }

  friend bool operator==( monomial_set const&, monomial_set const& ) = default;

private:
  std::vector<monomial> monomials_;
};

struct expand_options
{
  std::size_t max_monomials = 1'000'000;
};

/*! \brief Distributive expansion as a commutative 0/1 polynomial.

  Unit expands to the single empty monomial and Zero to the empty set.
  Throws `size_exceeded` once any intermediate set would exceed the bound,
  `duplicate_monomial` when a monomial arises twice, and `repeated_label`
  when a product multiplies a label by itself.
*/
inline monomial_set expand( expr const& e, expand_options const& options = {} )
{
  auto check = [&]( std::size_t size ) {
    if ( size > options.max_monomials )
      throw error( error_kind::size_exceeded,
                   "expansion exceeds " + std::to_string( options.max_monomials ) + " monomials" );
  };

  return detail::fold_shared<monomial_set>( e, [&]( expr const& node, std::span<monomial_set const> sub ) {
    switch ( node.kind() )
    {
    case node_kind::unit:
      return monomial_set( std::vector<monomial>{ monomial{} } );
    case node_kind::zero:
      return monomial_set();
    case node_kind::term:
      return monomial_set( std::vector<monomial>{ monomial{ node.term_label() } } );
    case node_kind::sum:
    {
      std::size_t total = 0;
      for ( auto const& s : sub )
        total += s.size();
      check( total );
      std::vector<monomial> all;
      all.reserve( total );
      for ( auto const& s : sub )
        all.insert( all.end(), s.begin(), s.end() );
      return monomial_set( std::move( all ) );
    }
    case node_kind::product:
    {
      std::vector<monomial> acc{ monomial{} };
      for ( auto const& factor : sub )
      {
        check( acc.size() * factor.size() );
        std::vector<monomial> next;
        next.reserve( acc.size() * factor.size() );
        for ( auto const& lhs : acc )
          for ( auto const& rhs : factor )
            next.push_back( lhs * rhs );
        acc = std::move( next );
      }
      return monomial_set( std::move( acc ) );
    }
    }
    return monomial_set();
  } );
}

} // namespace fibexpr
