#pragma once

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "expression.hpp"

namespace fibexpr
{

/// 2^31 - 1.
inline constexpr std::uint64_t default_prime = 2147483647u;

inline bool is_prime( std::uint64_t value )
{
  if ( value < 2 )
    return false;
  for ( std::uint64_t d = 2; d * d <= value; ++d )
    if ( value % d == 0 )
      return false;
  return true;
}

/// Default prime, overridden by the FIBEXPR_PRIME environment variable.
inline std::uint64_t configured_prime()
{
  if ( char const* text = std::getenv( "FIBEXPR_PRIME" ); text != nullptr && *text != '\0' )
  {
    char* end = nullptr;
    auto value = std::strtoull( text, &end, 10 );
    if ( *end != '\0' )
      throw error( error_kind::invalid_prime, std::string( "FIBEXPR_PRIME is not an integer: " ) + text );
    return value;
  }
  return default_prime;
}

/*! \brief Values for labels, as residues modulo a prime.

  The prime must be below 2^32 so that a product of two residues fits in
  64 bits.
*/
class assignment
{
public:
  explicit assignment( std::uint64_t prime = default_prime ) : prime_( prime )
  {
    if ( prime >= ( std::uint64_t{ 1 } << 32 ) || !is_prime( prime ) )
      throw error( error_kind::invalid_prime, std::to_string( prime ) + " is not a prime below 2^32" );
  }

  std::uint64_t prime() const noexcept { return prime_; }

  void set( label l, std::uint64_t value )
  {
    auto& slot = slots( l.kind );
    if ( slot.size() <= l.index )
      slot.resize( l.index + 1 );
    slot[l.index] = value % prime_;
  }

  std::optional<std::uint64_t> get( label l ) const
  {
    auto const& slot = l.kind == label_kind::a ? a_ : b_;
    if ( l.index >= slot.size() )
      return std::nullopt;
    return slot[l.index];
  }

  /// Value of `l`; throws `unassigned_label` when missing.
  std::uint64_t at( label l ) const
  {
    if ( auto v = get( l ) )
      return *v;
    throw error( error_kind::unassigned_label, to_string( l ) + " has no value" );
  }

private:
  std::vector<std::optional<std::uint64_t>>& slots( label_kind kind ) { return kind == label_kind::a ? a_ : b_; }

  std::uint64_t prime_;
  std::vector<std::optional<std::uint64_t>> a_;
  std::vector<std::optional<std::uint64_t>> b_;
};

/// Uniform residues for the given labels.
template<typename Rng>
assignment random_assignment( std::span<label const> labels, std::uint64_t prime, Rng& rng )
{
  assignment result( prime );
  std::uniform_int_distribution<std::uint64_t> dist( 0, prime - 1 );
  for ( auto l : labels )
    result.set( l, dist( rng ) );
  return result;
}

/// Value of `e` in the integers modulo `values.prime()`.
inline std::uint64_t evaluate_mod( expr const& e, assignment const& values )
{
  auto const p = values.prime();
  return detail::fold_shared<std::uint64_t>( e, [&]( expr const& node, std::span<std::uint64_t const> sub ) {
    switch ( node.kind() )
    {
    case node_kind::unit:
      return std::uint64_t{ 1 } % p;
    case node_kind::zero:
      return std::uint64_t{ 0 };
    case node_kind::term:
      return values.at( node.term_label() );
    case node_kind::sum:
    {
      std::uint64_t acc = 0;
      for ( auto v : sub )
        acc = ( acc + v ) % p;
      return acc;
    }
    case node_kind::product:
    {
      std::uint64_t acc = 1;
      for ( auto v : sub )
        acc = acc * v % p;
      return acc;
    }
    }
    return std::uint64_t{ 0 };
  } );
}

} // namespace fibexpr
