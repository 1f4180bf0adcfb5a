"""
This package contains the command line front end of kripkelab:
:mod:`~kripkelab.kripkelab_cli.kfapplication_cli`, its file formats, random
instance generators and experiment suites.
"""
