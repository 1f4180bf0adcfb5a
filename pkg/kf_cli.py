#! python
# -*- coding: utf-8 -*-
"""
Run the kripkelab command line front end, e.g.::

    $ python kf_cli.py refine --frame f.json --partition "0,1|2"
"""
import sys

from kripkelab.kripkelab_cli.kfapplication_cli import main

if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
