public void testPoll(){
   Snapshot s = sqlMng.createSnapshot();
   assumeNotNull(s);
   String v = s.poll();
   assertEquals("8/22/2022",v);}
