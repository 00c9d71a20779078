VERDICT_TEMPLATES = {
    "gbs-kirchberg": {
        "text": "strong boundary action; topologically free; Kirchberg algebra; C*-simple",
        "keys": ["strong-boundary", "topologically-free", "kirchberg-uct", "cstar-simple"],
        "citations": ["thm-D", "thm-C", "thm-towers"],
    },
    "gbs-unimodular": {
        "text": "strong boundary action; not topologically free",
        "keys": ["strong-boundary"],
        "citations": ["thm-C", "prop-unimodular"],
    },
    "tree-strong-boundary": {
        "text": "strong boundary action",
        "keys": ["strong-boundary"],
        "citations": ["thm-C", "thm-towers"],
    },
    "tree-free-product": {
        "text": "strong boundary action; topologically free; Kirchberg algebra; C*-simple",
        "keys": ["strong-boundary", "topologically-free", "kirchberg-uct", "cstar-simple"],
        "citations": ["thm-C", "thm-E1", "thm-towers"],
    },
    "racg-simple": {
        "text": "unital simple separable purely infinite; nuclear Kirchberg algebra satisfying the UCT",
        "keys": ["unital-simple-separable-purely-infinite", "nuclear", "kirchberg-uct"],
        "citations": ["thm-A"],
    },
    "raag-simple": {
        "text": "unital simple separable purely infinite",
        "keys": ["unital-simple-separable-purely-infinite"],
        "citations": ["thm-A"],
    },
    "racg-structure": {
        "text": "strongly purely infinite; minimal but not topologically free; O∞-stable: {structure}",
        "keys": ["strongly-purely-infinite", "not-topologically-free", "minimal", "o-infinity-stable"],
        "citations": ["cor-structure"],
    },
    "raag-structure": {
        "text": "strongly purely infinite; not topologically free; finitely many invariant closed sets: {structure}",
        "keys": [
            "strongly-purely-infinite",
            "not-topologically-free",
            "finitely-many-invariant-closed-sets",
        ],
        "citations": ["cor-structure"],
    },
    "not-essential": {
        "text": "hypotheses of the simplicity and structure results fail (not essential)",
        "keys": [],
        "citations": ["thm-A", "cor-structure"],
    },
    "visual-racg": {
        "text": "simple and purely infinite",
        "keys": ["simple", "purely-infinite"],
        "citations": ["thm-B1"],
    },
    "visual-raag": {
        "text": "simple and purely infinite",
        "keys": ["simple", "purely-infinite"],
        "citations": ["thm-B2"],
    },
}

STRUCTURE_TEMPLATES = {
    "residual": "(C(∂X_{{Γ′}})⋊G_{{Γ′}})",
    "racg-euclidean": "{power}(C({{0̆,1̆}})⋊D∞)",
    "raag-euclidean": "C({{0̆,1̆}}{power}) ⊗ C(𝕋{power})",
}

WARNING_TEMPLATES = {
    "W-UNIMOD-TYPO": (
        "One worked example states unimodularity of BS(k,l) as |k| ≠ |l|; "
        "the definition gives |k| = |l|, which is what is computed."
    ),
    "W-Q-ORIENTATION": (
        "q is reported as the product of k(reverse)/k(edge); the reciprocal convention "
        "gives {reciprocals}. Only |q| = 1 matters."
    ),
    "W-EVENTUALLY-PERIODIC": "Boundary points are written as eventually periodic words prefix (cycle).",
    "W-DEGENERATE-GAMMA-PRIME": "Γ′ is empty; only the Euclidean tensor factors remain.",
    "W-INCONCLUSIVE-SEARCH": "Search stopped at bound {bound}; this is not a refutation.",
    "W-FINITE-BOUNDARY": "The boundary is finite; the north-south property holds only degenerately.",
    "W-SINGULAR": "Singular at {edges}: some vertex has a single incoming edge of index 1.",
}
