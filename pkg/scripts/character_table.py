"""Print the module / character / minor table for one or more reduced words."""
from __future__ import annotations

import argparse

from clusterfold.charfun import character_table
from clusterfold.coordring import validate_word


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("words", nargs="*", default=["213213", "121321"])
    args = ap.parse_args()
    for w in args.words:
        if not validate_word(w):
            ap.error(f"{w} is not a reduced word for the longest element")
        print(f"| module | minor | character along {w} |")
        print("|---|---|---|")
        for cid, phi, spec in character_table(w):
            print(f"| {cid} | {spec} | {phi} |")
        print()


if __name__ == "__main__":
    main()
