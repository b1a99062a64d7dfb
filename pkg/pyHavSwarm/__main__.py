# -*- coding: utf-8 -*-
# import
## batteries
from __future__ import print_function
import sys
import logging
import argparse
## package
from pyHavSwarm import __version__
from pyHavSwarm import Run
from pyHavSwarm import Grid
from pyHavSwarm import ParamStudy
from pyHavSwarm import Replay

# main
def main(args=None):
  if args is None:
    args = sys.argv[1:]

  # main parser
  desc = 'pyHavSwarm: simulation of truck-trailer HAV swarms'
  epi = """DESCRIPTION:
  Simulate swarms of highly automated vehicles (trucks with trailers)
  on a torus, steered by context maps, and summarize the outcomes
  (success, deadlock, livelock) over many random scenarios.
  """

  parser = argparse.ArgumentParser(description=desc, epilog=epi,
                                   formatter_class=argparse.RawTextHelpFormatter)
  parser.add_argument('--version', action='version', version='%(prog)s ' + __version__)
  parser.add_argument('-v', '--verbose', action='store_true', default=False,
                      help='Debug-level logging')
  parser.add_argument('-q', '--quiet', action='store_true', default=False,
                      help='Only log warnings and errors')

  # subparsers
  subparsers = parser.add_subparsers()
  ## run
  run = Run.parse_args(subparsers=subparsers)
  run.set_defaults(func=Run.main)
  ## grid
  grid = Grid.parse_args(subparsers=subparsers)
  grid.set_defaults(func=Grid.main)
  ## param-study
  param_study = ParamStudy.parse_args(subparsers=subparsers)
  param_study.set_defaults(func=ParamStudy.main)
  ## replay
  replay = Replay.parse_args(subparsers=subparsers)
  replay.set_defaults(func=Replay.main)

  # parsing args
  if args:
    args = parser.parse_args(args)
  else:
    args = parser.parse_args()

  # logging
  level = logging.INFO
  if args.verbose:
    level = logging.DEBUG
  elif args.quiet:
    level = logging.WARNING
  logging.basicConfig(format='%(asctime)s %(levelname)s %(name)s: %(message)s',
                      level=level, stream=sys.stderr)

  # running subcommands
  if hasattr(args, 'func'):
    sys.exit(args.func(args))
  else:
    parser.parse_args(['--help'])
    
    
if __name__ == '__main__':
    main()
