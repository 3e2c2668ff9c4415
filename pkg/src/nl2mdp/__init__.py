"""nl2mdp: natural-language task descriptions to validated MDP
representations and trained-policy code, via a staged agent pipeline."""

__version__ = "0.1.0"
