from nsfg.harness.cli import main

raise SystemExit(main())
