"""
Boundary Dynamics Toolkit

Normal forms in fundamental groups of graphs of groups, the action on the
boundary of the Bass-Serre tree, and hypothesis checks that map RACG, RAAG
and generalized Baumslag-Solitar inputs onto C*-algebra verdicts.
"""

__version__ = "1.0.0"
