"""Named small configurations with documented degeneracy behaviour.

All of these were found (or can be re-found) by exhaustive search; they are
the standing witnesses for stable degeneracy beyond the symmetry bound and
are consumed by the verification command and the test suite.
"""

# First configuration whose orbit under flip/translation/reflection is saturated
# (size 4N); its correlation is -1 away from 0.  Equals the quadratic-residue
# signs on Z/7 up to translation.
SATURATED_7 = "++-+--+"

# Spin -1 exactly off the quartic residues {0,1,3,9} of Z/13; the -1 positions
# form a perfect difference set, so the correlation is 1 away from 0.  Stable
# degeneracy is twice the orbit size.
SINGER_13 = "++-+-----+---"

# Two configurations on Z/14 with identical correlation where neither is an
# automorphism relabeling of the other.
PAIR_14 = ("--+++++-++-+-+", "--+-++++-+++-+")

# Configuration on Z/16 whose fiber is three full orbits; the automorphism
# group moves its correlation through four distinct vectors.
TRIPLE_16 = "--+-++++-+-+--++"

# Two-letter word over sign strings whose letter reversal leaves the
# correlation fixed but exits the orbit (flattened length 21).
WORD_21 = ("UVUUVVV", "++-", "-+-")
