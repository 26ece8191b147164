from gmink.cli import main

raise SystemExit(main())
