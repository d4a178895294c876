from ordeuclid.cli import main

raise SystemExit(main())
