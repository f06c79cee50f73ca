"""Reference values for the exceptional types, used by ``verify`` and the tests.

Betti numbers are ``beta_0, beta_1, ...`` of the real toric variety.  Row
orbits are named S1..S5 and matched by ``|S|``, the number of vertices they
select.  Reduced Betti numbers are keyed by degree.
"""

KNOWN_BETTI = {
    "G2": (1, 9),
    "F4": (1, 57, 264),
    "E6": (1, 36, 1323, 4392),
    "E7": (1, 63, 8127, 131041, 122976),
    "E8": (1, 120, 103815, 6925200, 23932800),
}

EULER_CHARACTERISTIC = {"E7": 0, "E8": 17_111_296}

# label -> (spec, |S|, vertices after reduction, reduced Betti of K_S)
SUBSETS = {
    "S1": ("E7", 9176, 408, {0: 1, 2: 1622}),
    "S2": ("E7", 8672, 928, {1: 129, 3: 1952}),
    "S3": ("E7", 4664, 4664, {2: 28855}),
    "S4": ("E8", 432944, 9328, {0: 1, 2: 57710}),
    "S5": ("E8", 451200, 15488, {1: 769, 3: 177280}),
}

# f-vector of one component of the reduced complex
COMPONENT_FVECTORS = {
    "S1": (204, 1312, 1920),
    "S2": (928, 6848, 15360, 11520),
    "S3": (4664, 36288, 60480),
    "S4": (4664, 36288, 60480),
    "S5": (15488, 193536, 645120),
}

# simple reflection exchanging the two components of the reduced complex
COMPONENT_SWAP = {"S1": 3, "S4": 2}

# Coxeter complex statistics: vertices, facets, cosets of the decomposition, facets per piece
COXETER_STATS = {
    "E7": (17_642, 2_903_040, 126, 23_040),
    "E8": (881_760, 696_729_600, 240, 2_903_040),
}


def subset_label(spec, subset_size: int):
    """Conventional S-label of a row orbit selecting ``subset_size`` vertices."""
    for label, (s, size, _, _) in SUBSETS.items():
        if s == str(spec) and size == int(subset_size):
            return label
    return None
